//! Simulation and exact verification for four one-dimensional probabilistic
//! cellular automata on the neighborhood `{-1, 0}`:
//!
//! * model A over `{0, 1}`, whose unique invariant measure is the symmetric
//!   mixture of the two alternating configurations, yet which never forgets
//!   an alternating start;
//! * model B, annihilating random walks (the image of A under [`lattice::phi`]);
//! * model C, coalescing random walks, which dominates B;
//! * model D, a two-colored coalescing system projecting onto both B and C.
//!
//! The crate is split into:
//!
//! * [`lattice`]: configurations, the counter-based update field, scalar and
//!   bit-parallel step kernels, structural maps and merge genealogy;
//! * [`cylinder`]: exact evolution of cylinder measures under an arbitrary
//!   finite-neighborhood transition function;
//! * [`analytics`]: closed-form and dynamic-programming density oracles plus
//!   Monte Carlo estimators;
//! * [`verify`]: exhaustive case checks of the local coupling properties;
//! * [`io`]: report serialization and space-time diagram rendering.
//!
//! Exact arithmetic uses [`Rational`]; the measure engine and walk oracles are
//! generic over [`Scalar`] so the same code runs in `f64` for quick looks.

pub mod analytics;
pub mod cylinder;
pub mod error;
pub mod io;
pub mod lattice;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational used by every exact computation.
pub type Rational = num_rational::BigRational;

pub type ExactRule = cylinder::TransitionFunction<Rational>;
pub type FloatRule = cylinder::TransitionFunction<f64>;
pub type ExactMeasure = cylinder::CylinderMeasure<Rational>;
pub type FloatMeasure = cylinder::CylinderMeasure<f64>;

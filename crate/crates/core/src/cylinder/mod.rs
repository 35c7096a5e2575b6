//! Exact evolution of cylinder measures under a finite-neighborhood
//! transition function.
//!
//! A measure is known on a contiguous window `K`; one step produces the
//! measure on `K' = { k : k + V ⊆ K }`, the largest window whose neighborhoods
//! stay inside `K`. Words are indexed in dense mixed radix, leftmost site most
//! significant.

mod measure;
mod rule;
mod rulefile;

pub use measure::{evolve_measure, invariance_residual, total_variation, CylinderMeasure, SUPPORT_CAP_ENTRIES};
pub use rule::{lift_model, lifted_symbol, lifted_occupancy, model_a_rule, LiftedModel, TransitionFunction};
pub use rulefile::{format_rule, parse_rule};

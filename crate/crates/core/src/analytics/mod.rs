//! Density of model C from the full configuration, its two walk
//! representations, and Monte Carlo estimators for models A, B and C.

mod density;
mod montecarlo;
mod oracles;

pub use density::{asymptotic_ratio, density_log, exact_density, EXACT_MAX_N};
pub use montecarlo::{
    check_pair_density_bounds, check_pair_density_bounds_with, mc_density, mc_pair_statistic_a,
    mc_pair_statistic_a_with, BatchStats, BinaryInit, BoundCheck, DensityReport, McParams, ParticleInit,
    Z95,
};
pub use oracles::{hitting_time_oracle, interface_walk_oracle, WalkSpec};

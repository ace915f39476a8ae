//! 2-D Monte Carlo foraging on a periodic arena.
//!
//! A walker follows two rules. If a target is visible (within `r_v`) it
//! walks straight to it. Otherwise it waits, picks a uniform direction and a
//! power-law flight length, and flies until the flight ends or a target
//! comes within `r_v` of the path, whichever happens first.

mod ensemble;
mod field;
mod walker;

pub use ensemble::{aggregate, ensemble_efficiency, ensemble_walkers, FieldSpec};
pub use field::{generate_targets, periodic_distance, Point, TargetField};
pub use walker::{
    run_walker, write_trajectory, SimOptions, SimResult, Step, StopRule, Trajectory, WalkerTotals,
};

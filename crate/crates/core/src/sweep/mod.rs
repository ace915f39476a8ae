//! Configuration, parameter sweeps and plot-ready CSV output.

mod commands;
mod config;
mod output;

pub use commands::{
    cmd_ctrw_sweep, cmd_fractional_compare, cmd_levy_sweep, cmd_ml_eval, cmd_path_trace,
    cmd_simulate, run, CompareRow, CompareTable, MlRow, Projection, SweepGrid,
};
pub use config::{parse_list, parse_range, Command, RunConfig};
pub use output::Metadata;

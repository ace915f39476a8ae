//! Continuous-time random walk (CTRW) optimal random search.
//!
//! The crate is split along the computation it supports:
//!
//! - [`sampling`]: seedable power-law flight and wait samplers and their
//!   empirical transforms.
//! - [`efficiency`]: analytic efficiency of Lévy and CTRW foragers and
//!   grid optimization.
//! - [`sim`]: 2-D Monte Carlo foraging over random target fields.
//! - [`fractional`]: Mittag-Leffler function, Montroll-Weiss propagator,
//!   Caputo and Riesz-Feller operators, and the fractional diffusion solver.
//! - [`sweep`]: configuration, parameter sweeps and CSV emission behind
//!   the `ctrw` binary.

pub mod efficiency;
pub mod error;
pub mod fractional;
pub mod rng;
pub mod sampling;
pub mod sim;
pub mod sweep;

pub use efficiency::{EfficiencyResult, GridAxis, GridSpec, Method, Regime, SearchParams};
pub use error::{Error, Result};
pub use rng::RngStream;
pub use sampling::{PowerLawSpec, Role};

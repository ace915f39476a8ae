//! Fractional master-equation machinery for the CTRW propagator.

mod caputo;
mod fde;
mod mc;
mod mittag_leffler;
mod propagator;
mod riesz;

pub use caputo::{caputo_l1, l1_weights};
pub use fde::{solve_fde, DEFAULT_LATTICE_POINTS};
pub use mc::{mc_propagator_char, CtrwModel, JumpLaw, McPropagator, WaitLaw};
pub use mittag_leffler::{
    mittag_leffler, mittag_leffler_branch, mittag_leffler_integral, mittag_leffler_series,
    series_is_reliable, Branch,
};
pub use propagator::{
    fractional_laplace_propagator, montroll_weiss, propagator_char, psi_asymptotic, w_asymptotic,
    GridValues, PropagatorGrid,
};
pub use riesz::{riesz_feller_apply, wavenumbers, FractionalField};

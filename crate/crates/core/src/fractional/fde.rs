use rayon::prelude::*;

use super::mittag_leffler::mittag_leffler;
use super::propagator::{GridValues, PropagatorGrid};
use super::riesz::{wavenumbers, FractionalField};
use crate::error::{Error, Result};

pub const DEFAULT_LATTICE_POINTS: usize = 1 << 12;

impl FractionalField {
    /// Default lattice for evolving up to `t_max`: 2^12 points over a
    /// half-width of at least `20 t_max^(β/α)`.
    pub fn default_half_width(alpha: f64, beta: f64, t_max: f64) -> f64 {
        (20.0 * t_max.powf(beta / alpha)).max(10.0)
    }
}

/// Solve `D_t^β p = D_x^α p` (Caputo in time, Riesz-Feller in space, unit
/// coefficient) on the periodic lattice of `initial`. Each Fourier mode
/// evolves exactly as `p̂(k, t) = E_β(-|k|^α t^β) p̂(k, 0)`.
pub fn solve_fde(
    initial: &FractionalField,
    t_values: &[f64],
    alpha: f64,
    beta: f64,
) -> Result<PropagatorGrid> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::invalid("alpha", format!("{alpha} outside (0, 2]")));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::invalid("beta", format!("{beta} outside (0, 1]")));
    }
    if let Some(t) = t_values.iter().find(|t| !(**t >= 0.0)) {
        return Err(Error::invalid("t", format!("{t} must be non-negative")));
    }
    let mass = initial.mass();
    if (mass - 1.0).abs() > 1e-8 {
        return Err(Error::Normalization { mass });
    }
    let n = initial.grid_points();
    let ks = wavenumbers(n, initial.spacing);
    let spec0 = initial.spectrum();
    let half = n / 2;

    let rows = t_values
        .par_iter()
        .map(|&t| {
            // |k| is symmetric, so evaluate the multiplier once per |m|.
            let mult: Vec<f64> = (0..=half)
                .map(|m| {
                    if t == 0.0 || m == 0 {
                        Ok(1.0)
                    } else {
                        mittag_leffler(beta, -(ks[m].abs().powf(alpha) * t.powf(beta)))
                    }
                })
                .collect::<Result<_>>()?;
            let spec: Vec<_> = spec0
                .iter()
                .enumerate()
                .map(|(m, c)| c * mult[if m <= half { m } else { n - m }])
                .collect();
            Ok(initial.from_spectrum(spec))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(PropagatorGrid {
        axis: initial.positions(),
        t_values: t_values.to_vec(),
        values: GridValues::Density(rows),
        alpha,
        beta,
    })
}

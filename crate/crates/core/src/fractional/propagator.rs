use std::io::Write;

use num_complex::Complex64;

use super::mittag_leffler::mittag_leffler;
use crate::error::{Error, Result};

/// Montroll-Weiss propagator in Fourier-Laplace space,
/// `(1 - Ψ(s)) / s · 1 / (1 - W(k) Ψ(s))`.
pub fn montroll_weiss(s: f64, w_of_k: Complex64, psi_of_s: f64) -> Result<Complex64> {
    if !(s > 0.0) {
        return Err(Error::invalid("s", format!("{s} must be positive")));
    }
    if w_of_k.norm() > 1.0 + 1e-12 {
        return Err(Error::invalid("W", format!("|W| = {} exceeds 1", w_of_k.norm())));
    }
    if !(psi_of_s > 0.0 && psi_of_s <= 1.0) {
        return Err(Error::invalid("Psi", format!("{psi_of_s} outside (0, 1]")));
    }
    let denom = Complex64::new(1.0, 0.0) - w_of_k * psi_of_s;
    if denom.norm() < 1e-300 {
        return Err(Error::Pole(format!("W(k) Psi(s) = 1 at s = {s}")));
    }
    Ok(Complex64::new((1.0 - psi_of_s) / s, 0.0) / denom)
}

/// Small-`k` jump characteristic function `1 - |k|^α`.
pub fn w_asymptotic(k: f64, alpha: f64) -> Complex64 {
    Complex64::new(1.0 - k.abs().powf(alpha), 0.0)
}

/// Small-`s` wait transform `1 / (1 + s^β)`.
pub fn psi_asymptotic(s: f64, beta: f64) -> f64 {
    1.0 / (1.0 + s.powf(beta))
}

/// Fractional propagator in Fourier-Laplace space, `s^(β-1) / (s^β + |k|^α)`.
pub fn fractional_laplace_propagator(k: f64, s: f64, alpha: f64, beta: f64) -> f64 {
    s.powf(beta - 1.0) / (s.powf(beta) + k.abs().powf(alpha))
}

/// Characteristic function of the fractional propagator in time,
/// `E_β(-|k|^α t^β)`.
pub fn propagator_char(k: f64, t: f64, alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::invalid("alpha", format!("{alpha} outside (0, 2]")));
    }
    if !(t >= 0.0) {
        return Err(Error::invalid("t", format!("{t} must be non-negative")));
    }
    if k == 0.0 || t == 0.0 {
        check_beta(beta)?;
        return Ok(1.0);
    }
    mittag_leffler(beta, -(k.abs().powf(alpha) * t.powf(beta)))
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::invalid("beta", format!("{beta} outside (0, 1]")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum GridValues {
    /// Characteristic function, `[t][k]`.
    Characteristic(Vec<Vec<Complex64>>),
    /// Density, `[t][x]`.
    Density(Vec<Vec<f64>>),
}

/// Propagator values on a `(t, k)` or `(t, x)` lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct PropagatorGrid {
    /// Wavenumbers for characteristic functions, positions for densities.
    pub axis: Vec<f64>,
    pub t_values: Vec<f64>,
    pub values: GridValues,
    pub alpha: f64,
    pub beta: f64,
}

impl PropagatorGrid {
    /// CSV export: `t,k,value_real,value_imag` or `t,x,density`.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        match &self.values {
            GridValues::Characteristic(rows) => {
                writeln!(out, "t,k,value_real,value_imag")?;
                for (t, row) in self.t_values.iter().zip(rows) {
                    for (k, v) in self.axis.iter().zip(row) {
                        writeln!(out, "{t},{k},{},{}", v.re, v.im)?;
                    }
                }
            }
            GridValues::Density(rows) => {
                writeln!(out, "t,x,density")?;
                for (t, row) in self.t_values.iter().zip(rows) {
                    for (x, v) in self.axis.iter().zip(row) {
                        writeln!(out, "{t},{x},{v}")?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Characteristic-function rows, if this grid holds them.
    pub fn characteristic(&self) -> Option<&[Vec<Complex64>]> {
        match &self.values {
            GridValues::Characteristic(v) => Some(v),
            GridValues::Density(_) => None,
        }
    }

    pub fn density(&self) -> Option<&[Vec<f64>]> {
        match &self.values {
            GridValues::Density(v) => Some(v),
            GridValues::Characteristic(_) => None,
        }
    }
}

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Real density on a uniform periodic 1-D lattice starting at `origin`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalField {
    pub origin: f64,
    pub spacing: f64,
    pub values: Vec<f64>,
}

impl FractionalField {
    pub fn new(origin: f64, spacing: f64, values: Vec<f64>) -> Result<Self> {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::invalid("spacing", format!("{spacing} must be positive")));
        }
        if values.is_empty() {
            return Err(Error::Empty("field values"));
        }
        Ok(Self {
            origin,
            spacing,
            values,
        })
    }

    /// Lattice of `n` points covering `[-half_width, half_width)`, filled
    /// by `f(x)`.
    pub fn sample(n: usize, half_width: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let spacing = 2.0 * half_width / n as f64;
        let values = (0..n).map(|i| f(-half_width + i as f64 * spacing)).collect();
        Self::new(-half_width, spacing, values)
    }

    /// Normalized Gaussian of standard deviation `sigma` centred at 0.
    pub fn gaussian(n: usize, half_width: f64, sigma: f64) -> Result<Self> {
        let norm = 1.0 / (sigma * (2.0 * PI).sqrt());
        Self::sample(n, half_width, |x| norm * (-0.5 * (x / sigma).powi(2)).exp())
    }

    /// Unit mass concentrated on the lattice point at 0.
    pub fn point_mass(n: usize, half_width: f64) -> Result<Self> {
        let mut field = Self::sample(n, half_width, |_| 0.0)?;
        let centre = (half_width / field.spacing).round() as usize;
        field.values[centre] = 1.0 / field.spacing;
        Ok(field)
    }

    pub fn grid_points(&self) -> usize {
        self.values.len()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.values.len())
            .map(|i| self.origin + i as f64 * self.spacing)
            .collect()
    }

    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spacing
    }

    pub(crate) fn spectrum(&self) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
        buf
    }

    /// Inverse of [`spectrum`](Self::spectrum) on this lattice.
    pub(crate) fn from_spectrum(&self, mut spec: Vec<Complex64>) -> Vec<f64> {
        let n = spec.len();
        FftPlanner::new().plan_fft_inverse(n).process(&mut spec);
        spec.iter().map(|c| c.re / n as f64).collect()
    }
}

/// Physical wavenumbers of the `n` DFT modes on spacing `dx`.
pub fn wavenumbers(n: usize, dx: f64) -> Vec<f64> {
    let base = 2.0 * PI / (n as f64 * dx);
    (0..n)
        .map(|m| {
            let m = if m <= n / 2 { m as f64 } else { m as f64 - n as f64 };
            base * m
        })
        .collect()
}

/// Symmetric Riesz-Feller derivative of order `α`, applied spectrally with
/// symbol `-|k|^α`.
pub fn riesz_feller_apply(field: &FractionalField, alpha: f64) -> Result<FractionalField> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::invalid("alpha", format!("{alpha} outside (0, 2]")));
    }
    let ks = wavenumbers(field.grid_points(), field.spacing);
    let spec: Vec<Complex64> = field
        .spectrum()
        .into_iter()
        .zip(&ks)
        .map(|(c, k)| c * -(k.abs().powf(alpha)))
        .collect();
    Ok(FractionalField {
        origin: field.origin,
        spacing: field.spacing,
        values: field.from_spectrum(spec),
    })
}

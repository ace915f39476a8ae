//! Monte Carlo estimate of the 1-D CTRW propagator's characteristic function.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp, Normal};
use rayon::prelude::*;

use super::mittag_leffler::mittag_leffler;
use super::propagator::{GridValues, PropagatorGrid};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::sampling::PowerLawSpec;

/// Symmetric jump law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JumpLaw {
    /// Pareto magnitude with tail exponent `alpha`, random sign.
    PowerLaw { alpha: f64, scale: f64 },
    /// Gaussian jumps, the `alpha = 2` surrogate.
    Gaussian { sigma: f64 },
}

/// Waiting-time law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WaitLaw {
    PowerLaw { beta: f64, scale: f64 },
    /// Exponential waits, the `beta = 1` surrogate.
    Exponential { mean: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CtrwModel {
    pub jumps: JumpLaw,
    pub waits: WaitLaw,
}

impl CtrwModel {
    pub fn power_law(alpha: f64, beta: f64, jump_scale: f64, wait_scale: f64) -> Self {
        Self {
            jumps: JumpLaw::PowerLaw {
                alpha,
                scale: jump_scale,
            },
            waits: WaitLaw::PowerLaw {
                beta,
                scale: wait_scale,
            },
        }
    }

    pub fn classical(sigma: f64, mean_wait: f64) -> Self {
        Self {
            jumps: JumpLaw::Gaussian { sigma },
            waits: WaitLaw::Exponential { mean: mean_wait },
        }
    }

    /// Space exponent of the scaling limit.
    pub fn alpha(&self) -> f64 {
        match self.jumps {
            JumpLaw::PowerLaw { alpha, .. } => alpha,
            JumpLaw::Gaussian { .. } => 2.0,
        }
    }

    /// Time exponent of the scaling limit.
    pub fn beta(&self) -> f64 {
        match self.waits {
            WaitLaw::PowerLaw { beta, .. } => beta,
            WaitLaw::Exponential { .. } => 1.0,
        }
    }
}

enum JumpSampler {
    Pareto(PowerLawSpec),
    Normal(Normal<f64>),
}

enum WaitSampler {
    Pareto(PowerLawSpec),
    Exp(Exp<f64>),
}

impl JumpSampler {
    fn new(law: JumpLaw) -> Result<Self> {
        Ok(match law {
            JumpLaw::PowerLaw { alpha, scale } => Self::Pareto(PowerLawSpec::length(alpha, scale)?),
            JumpLaw::Gaussian { sigma } => Self::Normal(
                Normal::new(0.0, sigma).map_err(|e| Error::invalid("sigma", e.to_string()))?,
            ),
        })
    }

    fn sample(&self, rng: &mut RngStream) -> f64 {
        match self {
            Self::Pareto(spec) => {
                let l = spec.sample(rng);
                if rng.random::<bool>() {
                    l
                } else {
                    -l
                }
            }
            Self::Normal(d) => d.sample(rng),
        }
    }
}

impl WaitSampler {
    fn new(law: WaitLaw) -> Result<Self> {
        Ok(match law {
            WaitLaw::PowerLaw { beta, scale } => Self::Pareto(PowerLawSpec::wait(beta, scale)?),
            WaitLaw::Exponential { mean } => {
                if !(mean > 0.0) {
                    return Err(Error::invalid("mean_wait", format!("{mean} must be positive")));
                }
                Self::Exp(Exp::new(1.0 / mean).map_err(|e| Error::invalid("mean_wait", e.to_string()))?)
            }
        })
    }

    fn sample(&self, rng: &mut RngStream) -> f64 {
        match self {
            Self::Pareto(spec) => spec.sample(rng),
            Self::Exp(d) => d.sample(rng),
        }
    }
}

/// Empirical characteristic function together with the fitted scale `c`
/// of the model `E_β(-c |k|^α t^β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct McPropagator {
    pub empirical: PropagatorGrid,
    pub scale: f64,
    pub walkers: usize,
    /// Fewer than 10^4 walkers.
    pub low_statistics: bool,
}

impl McPropagator {
    /// `E_β(-c |k|^α t^β)` on the same lattice.
    pub fn analytic(&self) -> Result<PropagatorGrid> {
        let g = &self.empirical;
        let rows = g
            .t_values
            .iter()
            .map(|&t| {
                g.axis
                    .iter()
                    .map(|&k| scaled_char(self.scale, k, t, g.alpha, g.beta).map(|v| Complex64::new(v, 0.0)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PropagatorGrid {
            axis: g.axis.clone(),
            t_values: g.t_values.clone(),
            values: GridValues::Characteristic(rows),
            alpha: g.alpha,
            beta: g.beta,
        })
    }

    /// `max |empirical - analytic|` over the lattice.
    pub fn sup_deviation(&self) -> Result<f64> {
        let analytic = self.analytic()?;
        let a = analytic.characteristic().expect("characteristic grid");
        let e = self.empirical.characteristic().expect("characteristic grid");
        Ok(a.iter()
            .zip(e)
            .flat_map(|(ra, re)| ra.iter().zip(re).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max))
    }
}

fn scaled_char(c: f64, k: f64, t: f64, alpha: f64, beta: f64) -> Result<f64> {
    if k == 0.0 || t == 0.0 {
        return Ok(1.0);
    }
    mittag_leffler(beta, -(c * k.abs().powf(alpha) * t.powf(beta)))
}

const CHUNK: usize = 1024;

/// Simulate `walkers` independent 1-D CTRWs (wait, then jump) started at the
/// origin, record positions at each of `t_values`, and return the empirical
/// characteristic function over `k_grid` with a single scale factor fitted
/// at the smallest positive time.
pub fn mc_propagator_char(
    model: &CtrwModel,
    walkers: usize,
    t_values: &[f64],
    k_grid: &[f64],
    rng: &RngStream,
) -> Result<McPropagator> {
    if walkers == 0 {
        return Err(Error::invalid("walkers", "must be at least 1"));
    }
    if t_values.is_empty() || k_grid.is_empty() {
        return Err(Error::Empty("t or k grid"));
    }
    if let Some(t) = t_values.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
        return Err(Error::invalid("t", format!("{t} must be finite and non-negative")));
    }
    let jumps = JumpSampler::new(model.jumps)?;
    let waits = WaitSampler::new(model.waits)?;

    let mut order: Vec<usize> = (0..t_values.len()).collect();
    order.sort_by(|&a, &b| t_values[a].total_cmp(&t_values[b]));
    let nt = t_values.len();
    let nk = k_grid.len();

    let chunks = walkers.div_ceil(CHUNK);
    let partial: Vec<Vec<Complex64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut stream = rng.substream(c as u64);
            let count = CHUNK.min(walkers - c * CHUNK);
            let mut acc = vec![Complex64::new(0.0, 0.0); nt * nk];
            let mut positions = vec![0.0; nt];
            for _ in 0..count {
                let (mut clock, mut x) = (0.0, 0.0);
                let mut next = waits.sample(&mut stream);
                for &ti in &order {
                    let t = t_values[ti];
                    while clock + next <= t {
                        clock += next;
                        x += jumps.sample(&mut stream);
                        next = waits.sample(&mut stream);
                    }
                    positions[ti] = x;
                }
                for (ti, &x) in positions.iter().enumerate() {
                    for (ki, &k) in k_grid.iter().enumerate() {
                        let (s, c) = (k * x).sin_cos();
                        acc[ti * nk + ki] += Complex64::new(c, s);
                    }
                }
            }
            acc
        })
        .collect();

    let mut total = vec![Complex64::new(0.0, 0.0); nt * nk];
    for p in &partial {
        for (a, b) in total.iter_mut().zip(p) {
            *a += b;
        }
    }
    // Divide rather than multiply by a reciprocal so an untouched walker
    // population averages to exactly 1.
    let n = walkers as f64;
    let rows: Vec<Vec<Complex64>> = (0..nt)
        .map(|ti| (0..nk).map(|ki| total[ti * nk + ki] / n).collect())
        .collect();

    let alpha = model.alpha();
    let beta = model.beta();
    let fit_t = t_values
        .iter()
        .copied()
        .filter(|&t| t > 0.0)
        .fold(f64::INFINITY, f64::min);
    let scale = if fit_t.is_finite() {
        let fit_row = &rows[t_values.iter().position(|&t| t == fit_t).expect("fit time present")];
        fit_scale(fit_row, k_grid, fit_t, alpha, beta)?
    } else {
        1.0
    };

    Ok(McPropagator {
        empirical: PropagatorGrid {
            axis: k_grid.to_vec(),
            t_values: t_values.to_vec(),
            values: GridValues::Characteristic(rows),
            alpha,
            beta,
        },
        scale,
        walkers,
        low_statistics: walkers < 10_000,
    })
}

/// Least-squares fit of `c` in `E_β(-c |k|^α t^β)` against the real part of
/// one empirical row: coarse scan in `ln c`, then golden-section refinement.
fn fit_scale(row: &[Complex64], ks: &[f64], t: f64, alpha: f64, beta: f64) -> Result<f64> {
    let loss = |ln_c: f64| -> Result<f64> {
        let c = ln_c.exp();
        let mut s = 0.0;
        for (v, &k) in row.iter().zip(ks) {
            let d = v.re - scaled_char(c, k, t, alpha, beta)?;
            s += d * d;
        }
        Ok(s)
    };
    let (lo, hi, step) = (-25.0, 25.0, 0.25);
    let mut best = (lo, loss(lo)?);
    let mut x = lo + step;
    while x <= hi {
        let l = loss(x)?;
        if l < best.1 {
            best = (x, l);
        }
        x += step;
    }
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (loss(c)?, loss(d)?);
    while b - a > 1e-10 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = loss(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = loss(d)?;
        }
    }
    Ok(((a + b) / 2.0).exp())
}

//! Truncated power-law sampling of flight lengths and waiting times.
//!
//! Lengths follow a Pareto law with survival `(x / x0)^(-alpha)`, waits the
//! same construction with exponent `beta`. Both are drawn by inverting the
//! CDF with a single open-interval uniform.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::Open01;

use crate::error::{Error, Result};

/// Which random variable a [`PowerLawSpec`] describes. The admissible
/// exponent range depends on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Flight length, exponent in (0, 2).
    Length,
    /// Waiting time, exponent in (0, 1).
    Wait,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerLawSpec {
    role: Role,
    exponent: f64,
    lower_cutoff: f64,
}

impl PowerLawSpec {
    pub fn new(role: Role, exponent: f64, lower_cutoff: f64) -> Result<Self> {
        let upper = match role {
            Role::Length => 2.0,
            Role::Wait => 1.0,
        };
        if !(exponent > 0.0 && exponent < upper) {
            return Err(Error::invalid(
                "exponent",
                format!("{exponent} outside (0, {upper}) for {role:?}"),
            ));
        }
        if !(lower_cutoff > 0.0 && lower_cutoff.is_finite()) {
            return Err(Error::invalid(
                "lower_cutoff",
                format!("{lower_cutoff} must be positive and finite"),
            ));
        }
        Ok(Self {
            role,
            exponent,
            lower_cutoff,
        })
    }

    pub fn length(alpha: f64, cutoff: f64) -> Result<Self> {
        Self::new(Role::Length, alpha, cutoff)
    }

    pub fn wait(beta: f64, cutoff: f64) -> Result<Self> {
        Self::new(Role::Wait, beta, cutoff)
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn lower_cutoff(&self) -> f64 {
        self.lower_cutoff
    }

    /// Inverse CDF: `x0 * u^(-1/exponent)` for `u` in (0, 1].
    pub fn quantile_from_uniform(&self, u: f64) -> f64 {
        self.lower_cutoff * u.powf(-1.0 / self.exponent)
    }

    /// Exact survival function `P(X > x)`.
    pub fn survival(&self, x: f64) -> f64 {
        if x <= self.lower_cutoff {
            1.0
        } else {
            (x / self.lower_cutoff).powf(-self.exponent)
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.sample(Open01);
        self.quantile_from_uniform(u)
    }
}

/// Draw one flight length. `spec` must carry [`Role::Length`].
pub fn sample_length<R: Rng + ?Sized>(spec: &PowerLawSpec, rng: &mut R) -> f64 {
    debug_assert_eq!(spec.role, Role::Length);
    spec.sample(rng)
}

/// Draw one waiting time. `spec` must carry [`Role::Wait`].
pub fn sample_wait<R: Rng + ?Sized>(spec: &PowerLawSpec, rng: &mut R) -> f64 {
    debug_assert_eq!(spec.role, Role::Wait);
    spec.sample(rng)
}

/// Uniformly oriented unit vector in the plane.
pub fn sample_direction_2d<R: Rng + ?Sized>(rng: &mut R) -> [f64; 2] {
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    let (s, c) = theta.sin_cos();
    [c, s]
}

/// Attach an independent random sign to every sample.
pub fn symmetrize<R: Rng + ?Sized>(samples: &[f64], rng: &mut R) -> Vec<f64> {
    samples
        .iter()
        .map(|&x| if rng.random::<bool>() { x } else { -x })
        .collect()
}

/// Empirical characteristic function `mean(exp(i k l))` at each `k`.
pub fn empirical_char_length(samples: &[f64], k_grid: &[f64]) -> Result<Vec<Complex64>> {
    if samples.is_empty() {
        return Err(Error::Empty("length samples"));
    }
    let n = samples.len() as f64;
    Ok(k_grid
        .iter()
        .map(|&k| {
            if k == 0.0 {
                return Complex64::new(1.0, 0.0);
            }
            let (mut re, mut im) = (0.0, 0.0);
            for &l in samples {
                let (s, c) = (k * l).sin_cos();
                re += c;
                im += s;
            }
            Complex64::new(re / n, im / n)
        })
        .collect())
}

/// Empirical Laplace transform `mean(exp(-s t))` at each rate `s`.
pub fn empirical_laplace_wait(samples: &[f64], s_grid: &[f64]) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::Empty("wait samples"));
    }
    if let Some(&s) = s_grid.iter().find(|&&s| s < 0.0) {
        return Err(Error::invalid("s", format!("{s} is negative")));
    }
    let n = samples.len() as f64;
    Ok(s_grid
        .iter()
        .map(|&s| {
            if s == 0.0 {
                1.0
            } else {
                samples.iter().map(|&t| (-s * t).exp()).sum::<f64>() / n
            }
        })
        .collect())
}

//! Analytic search efficiency for Lévy and CTRW foragers.
//!
//! The CTRW cost `<LT>` is the ratio of products of elementary power-law
//! integrals over the flight length `l` and the waiting time `t`:
//!
//! ```text
//!          ∫[r_v,λ] l^-α dl · ∫[0,T] t^-β dt  +  λ ∫[λ,∞) l^-α-1 dl · T ∫[T,∞) t^-β-1 dt
//! <LT> = ---------------------------------------------------------------------------
//!                          ∫[r_v,∞) l^-α-1 dl · ∫[T,∞) t^-β-1 dt
//! ```
//!
//! Every factor has a closed antiderivative, so the "quadrature" route is
//! exact up to rounding and serves as the reference for the printed closed
//! form.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Destructive,
    Nondestructive,
}

impl Regime {
    pub const ALL: [Regime; 2] = [Regime::Destructive, Regime::Nondestructive];

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Destructive => "destructive",
            Regime::Nondestructive => "nondestructive",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "destructive" => Ok(Regime::Destructive),
            "nondestructive" => Ok(Regime::Nondestructive),
            other => Err(Error::invalid(
                "regime",
                format!("`{other}` is neither destructive nor nondestructive"),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

/// Parameter vector shared by the analytic and simulation paths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchParams {
    /// Visibility radius.
    pub r_v: f64,
    /// Mean free path.
    pub lambda: f64,
    /// Mean wait time `T`.
    pub t_mean: f64,
    /// Flight-length exponent, (0, 2).
    pub alpha: f64,
    /// Waiting-time exponent, [0, 1). Zero switches waits off.
    pub beta: f64,
    /// Lévy exponent, (1, 3). Only read by the Lévy baseline.
    pub mu: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            r_v: 1.0,
            lambda: 1.0e3,
            t_mean: 5.0,
            alpha: 1.0,
            beta: 0.5,
            mu: 2.0,
        }
    }
}

impl SearchParams {
    pub fn new(r_v: f64, lambda: f64, t_mean: f64, alpha: f64, beta: f64, mu: f64) -> Result<Self> {
        let p = Self {
            r_v,
            lambda,
            t_mean,
            alpha,
            beta,
            mu,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_v > 0.0 && self.r_v.is_finite()) {
            return Err(Error::invalid("r_v", format!("{} must be positive", self.r_v)));
        }
        if !(self.lambda > self.r_v && self.lambda.is_finite()) {
            return Err(Error::invalid(
                "lambda",
                format!("{} must exceed r_v = {}", self.lambda, self.r_v),
            ));
        }
        if !(self.t_mean > 0.0 && self.t_mean.is_finite()) {
            return Err(Error::invalid("T", format!("{} must be positive", self.t_mean)));
        }
        if !(self.alpha > 0.0 && self.alpha < 2.0) {
            return Err(Error::invalid("alpha", format!("{} outside (0, 2)", self.alpha)));
        }
        if !(self.beta >= 0.0 && self.beta < 1.0) {
            return Err(Error::invalid("beta", format!("{} outside [0, 1)", self.beta)));
        }
        if !(self.mu > 1.0 && self.mu < 3.0) {
            return Err(Error::invalid("mu", format!("{} outside (1, 3)", self.mu)));
        }
        Ok(())
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EfficiencyResult {
    pub eta: f64,
    pub n_mean: f64,
    /// `<LT>` for CTRW, `<L>` for Lévy.
    pub cost_mean: f64,
    pub regime: Regime,
    pub method: Method,
}

/// `∫_a^b x^(-p) dx` for `0 < a < b <= ∞`. Infinite when the tail diverges.
pub fn power_integral(p: f64, a: f64, b: f64) -> f64 {
    if b.is_infinite() {
        return if p > 1.0 {
            a.powf(1.0 - p) / (p - 1.0)
        } else {
            f64::INFINITY
        };
    }
    // a^(1-p) * (exp(x) - 1) / (1-p) with x = (1-p) ln(b/a); expm1 keeps
    // this accurate as p -> 1, where it tends to ln(b/a).
    let log_ratio = (b / a).ln();
    let x = (1.0 - p) * log_ratio;
    let factor = if x == 0.0 { 1.0 } else { x.exp_m1() / x };
    a.powf(1.0 - p) * log_ratio * factor
}

/// `∫_0^T t^(-beta) dt` for `beta < 1`.
fn power_integral_from_zero(beta: f64, upper: f64) -> f64 {
    upper.powf(1.0 - beta) / (1.0 - beta)
}

/// The printed closed form of `<LT>`. Singular at `alpha = 1`.
pub fn mean_cost_lt_closed(params: &SearchParams) -> Result<f64> {
    params.validate()?;
    let SearchParams {
        r_v,
        lambda,
        t_mean,
        alpha,
        beta,
        ..
    } = *params;
    if (1.0 - alpha).abs() < f64::EPSILON {
        return Err(Error::Singular(format!(
            "closed form has 0/0 at alpha = {alpha}; use the antiderivative form"
        )));
    }
    let scale = lambda.powf(1.0 - alpha) * r_v.powf(alpha);
    Ok(alpha * beta * t_mean / ((1.0 - alpha) * (1.0 - beta)) * (scale - r_v) + t_mean * scale)
}

/// `<LT>` from the ratio of elementary integrals. Finite for every valid
/// parameter set, including `alpha = 1` and the `beta -> 0` limit.
pub fn mean_cost_lt_quadrature(params: &SearchParams) -> f64 {
    let SearchParams {
        r_v,
        lambda,
        t_mean,
        alpha,
        beta,
        ..
    } = *params;
    let body_l = power_integral(alpha, r_v, lambda);
    let body_t = power_integral_from_zero(beta, t_mean);
    let tail_l = power_integral(alpha + 1.0, lambda, f64::INFINITY);
    let norm_l = power_integral(alpha + 1.0, r_v, f64::INFINITY);
    let norm_t = power_integral(beta + 1.0, t_mean, f64::INFINITY);
    // The truncated-flight term carries the same time normalizer as the
    // denominator, which cancels exactly; at beta = 0 norm_t is infinite
    // and the first term vanishes.
    body_l * body_t / (norm_l * norm_t) + lambda * tail_l * t_mean / norm_l
}

/// Mean flights between captures, destructive regime: `(λ/r_v)^α`.
pub fn n_destructive(params: &SearchParams) -> f64 {
    (params.lambda / params.r_v).powf(params.alpha)
}

/// Mean flights between captures, nondestructive regime: `(λ/r_v)^(α/2)`.
pub fn n_nondestructive(params: &SearchParams) -> f64 {
    (params.lambda / params.r_v).powf(params.alpha / 2.0)
}

pub fn n_mean(params: &SearchParams, regime: Regime) -> f64 {
    match regime {
        Regime::Destructive => n_destructive(params),
        Regime::Nondestructive => n_nondestructive(params),
    }
}

/// CTRW efficiency `1 / (N <LT>)`.
pub fn eta_ctrw(params: &SearchParams, regime: Regime) -> Result<EfficiencyResult> {
    params.validate()?;
    let n = n_mean(params, regime);
    let cost = mean_cost_lt_quadrature(params);
    Ok(EfficiencyResult {
        eta: 1.0 / (n * cost),
        n_mean: n,
        cost_mean: cost,
        regime,
        method: Method::Quadrature,
    })
}

/// Truncated mean flight length of the Lévy baseline.
pub fn levy_mean_length(params: &SearchParams) -> f64 {
    let SearchParams { r_v, lambda, mu, .. } = *params;
    let body = power_integral(mu - 1.0, r_v, lambda);
    let tail = power_integral(mu, lambda, f64::INFINITY);
    let norm = power_integral(mu, r_v, f64::INFINITY);
    (body + lambda * tail) / norm
}

/// Lévy baseline efficiency `1 / (N <L>)` with `N` taken from the CTRW
/// expressions under `alpha = mu - 1`.
pub fn eta_levy(params: &SearchParams, regime: Regime) -> Result<EfficiencyResult> {
    params.validate()?;
    let ratio = params.lambda / params.r_v;
    let n = match regime {
        Regime::Destructive => ratio.powf(params.mu - 1.0),
        Regime::Nondestructive => ratio.powf((params.mu - 1.0) / 2.0),
    };
    let cost = levy_mean_length(params);
    Ok(EfficiencyResult {
        eta: 1.0 / (n * cost),
        n_mean: n,
        cost_mean: cost,
        regime,
        method: Method::Quadrature,
    })
}

/// Inclusive arithmetic lattice `start, start + step, ..., stop`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridAxis {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridAxis {
    pub fn new(start: f64, stop: f64, step: f64) -> Self {
        Self { start, stop, step }
    }

    /// A one-point axis.
    pub fn point(x: f64) -> Self {
        Self::new(x, x, 1.0)
    }

    pub fn values(&self) -> Vec<f64> {
        if !(self.step > 0.0) || !(self.stop >= self.start) || !self.start.is_finite() {
            return Vec::new();
        }
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        // Round to 10 decimals so lattice points print cleanly.
        (0..n)
            .map(|i| ((self.start + i as f64 * self.step) * 1e10).round() / 1e10)
            .collect()
    }

    pub fn check_within(&self, name: &'static str, lo: f64, hi: f64, lo_closed: bool) -> Result<()> {
        let vals = self.values();
        if vals.is_empty() {
            return Err(Error::Empty(name));
        }
        let first = vals[0];
        let last = vals[vals.len() - 1];
        let lo_ok = if lo_closed { first >= lo } else { first > lo };
        if !lo_ok || !(last < hi) {
            return Err(Error::invalid(
                name,
                format!("range [{first}, {last}] leaves the domain ({lo}, {hi})"),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub alpha: GridAxis,
    pub beta: GridAxis,
}

impl Default for GridSpec {
    /// 181 x 81 lattice over [0.1, 1.9] x [0.1, 0.9] at spacing 0.01.
    fn default() -> Self {
        Self {
            alpha: GridAxis::new(0.1, 1.9, 0.01),
            beta: GridAxis::new(0.1, 0.9, 0.01),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Optimum {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
}

/// Exhaustive grid argmax of [`eta_ctrw`]. Ties go to the lexicographically
/// smallest `(alpha, beta)`.
pub fn find_optimum(
    regime: Regime,
    lambda: f64,
    r_v: f64,
    t_mean: f64,
    grid: &GridSpec,
) -> Result<Optimum> {
    let alphas = grid.alpha.values();
    let betas = grid.beta.values();
    if alphas.is_empty() || betas.is_empty() {
        return Err(Error::Empty("optimization grid"));
    }
    let base = SearchParams {
        r_v,
        lambda,
        t_mean,
        ..SearchParams::default()
    };
    let mut best: Option<Optimum> = None;
    for &alpha in &alphas {
        for &beta in &betas {
            let eta = eta_ctrw(&base.with_alpha(alpha).with_beta(beta), regime)?.eta;
            if best.is_none_or(|b| eta > b.eta) {
                best = Some(Optimum { alpha, beta, eta });
            }
        }
    }
    Ok(best.expect("non-empty grid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(alpha: f64, beta: f64, lambda: f64) -> SearchParams {
        SearchParams::new(1.0, lambda, 5.0, alpha, beta, 2.0).unwrap()
    }

    #[test]
    fn closed_form_example() {
        let v = mean_cost_lt_closed(&p(0.5, 0.5, 100.0)).unwrap();
        assert!((v - 95.0).abs() < 1e-12, "{v}");
        let q = mean_cost_lt_quadrature(&p(0.5, 0.5, 100.0));
        assert!((q - 95.0).abs() / 95.0 < 1e-10, "{q}");
    }

    #[test]
    fn closed_form_rejects_alpha_one() {
        assert!(matches!(
            mean_cost_lt_closed(&p(1.0, 0.5, 100.0)),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn closed_form_limits_agree_across_alpha_one() {
        let lo = mean_cost_lt_closed(&p(1.0 - 1e-6, 0.3, 1e3)).unwrap();
        let hi = mean_cost_lt_closed(&p(1.0 + 1e-6, 0.3, 1e3)).unwrap();
        assert!((lo - hi).abs() / lo < 1e-4);
    }

    #[test]
    fn quadrature_at_alpha_one_uses_log() {
        let params = p(1.0, 0.5, 100.0);
        // αβ r T ln(λ/r) / (1-β) + T r with α = 1
        let expected = 0.5 * 5.0 * 100f64.ln() / 0.5 + 5.0;
        let v = mean_cost_lt_quadrature(&params);
        assert!((v - expected).abs() / expected < 1e-12, "{v} vs {expected}");
        let lo = mean_cost_lt_quadrature(&p(1.0 - 1e-6, 0.5, 100.0));
        let hi = mean_cost_lt_quadrature(&p(1.0 + 1e-6, 0.5, 100.0));
        assert!((lo - v).abs() / v < 1e-4 && (hi - v).abs() / v < 1e-4);
    }

    #[test]
    fn beta_zero_reduces_to_time_constant() {
        let params = p(0.7, 0.0, 1e3);
        let v = mean_cost_lt_quadrature(&params);
        let expected = 5.0 * 1e3f64.powf(0.3);
        assert!((v - expected).abs() / expected < 1e-12);
        let small = mean_cost_lt_quadrature(&p(0.7, 1e-9, 1e3));
        assert!((small - v).abs() / v < 1e-6);
    }

    #[test]
    fn n_examples() {
        assert!((n_destructive(&p(1.0, 0.5, 10.0)) - 10.0).abs() < 1e-12);
        assert!((n_destructive(&p(0.5, 0.5, 1e4)) - 100.0).abs() < 1e-9);
        assert!((n_destructive(&p(1e-12, 0.5, 1e4)) - 1.0).abs() < 1e-9);
        assert!((n_nondestructive(&p(1.0, 0.5, 100.0)) - 10.0).abs() < 1e-12);
        assert!((n_nondestructive(&p(1.0, 0.5, 1e6)) - 1000.0).abs() < 1e-9);
    }

    #[test]
    fn levy_destructive_n_tends_to_one() {
        let params = p(1.0, 0.5, 1e3).with_mu(1.0 + 1e-12);
        let r = eta_levy(&params, Regime::Destructive).unwrap();
        assert!((r.n_mean - 1.0).abs() < 1e-9);
    }

    #[test]
    fn eta_identity() {
        for regime in Regime::ALL {
            let r = eta_ctrw(&p(1.3, 0.4, 1e5), regime).unwrap();
            assert!((r.eta * r.n_mean * r.cost_mean - 1.0).abs() < 1e-12);
            let l = eta_levy(&p(1.3, 0.4, 1e5).with_mu(2.3), regime).unwrap();
            assert!((l.eta * l.n_mean * l.cost_mean - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ctrw_at_half_beta_is_levy_times_t() {
        // β/(1-β) = 1 at β = 1/2, so the time factor collapses to T.
        for &alpha in &[0.3, 0.9, 1.0, 1.4, 1.8] {
            for &lambda in &[10.0, 1e4] {
                let params = p(alpha, 0.5, lambda).with_mu(alpha + 1.0);
                for regime in Regime::ALL {
                    let c = eta_ctrw(&params, regime).unwrap().eta;
                    let l = eta_levy(&params, regime).unwrap().eta;
                    assert!((c * 5.0 - l).abs() / l < 1e-12);
                }
            }
        }
    }

    #[test]
    fn destructive_monotone_on_grid() {
        let alphas = GridAxis::new(0.1, 1.9, 0.1).values();
        let betas = GridAxis::new(0.1, 0.9, 0.1).values();
        for &a in &alphas {
            for w in betas.windows(2) {
                let e0 = eta_ctrw(&p(a, w[0], 1e3), Regime::Destructive).unwrap().eta;
                let e1 = eta_ctrw(&p(a, w[1], 1e3), Regime::Destructive).unwrap().eta;
                assert!(e1 < e0);
            }
        }
        for &b in &betas {
            for w in alphas.windows(2) {
                let e0 = eta_ctrw(&p(w[0], b, 1e3), Regime::Destructive).unwrap().eta;
                let e1 = eta_ctrw(&p(w[1], b, 1e3), Regime::Destructive).unwrap().eta;
                assert!(e1 < e0);
            }
        }
    }

    #[test]
    fn optimum_degenerate_and_destructive_corner() {
        let single = GridSpec {
            alpha: GridAxis::point(0.8),
            beta: GridAxis::point(0.3),
        };
        let o = find_optimum(Regime::Nondestructive, 1e3, 1.0, 5.0, &single).unwrap();
        assert_eq!((o.alpha, o.beta), (0.8, 0.3));
        let grid = GridSpec {
            alpha: GridAxis::new(0.1, 1.9, 0.05),
            beta: GridAxis::new(0.1, 0.9, 0.05),
        };
        for lambda in [10.0, 1e3, 1e5, 1e7] {
            let o = find_optimum(Regime::Destructive, lambda, 1.0, 5.0, &grid).unwrap();
            assert_eq!((o.alpha, o.beta), (0.1, 0.1));
        }
        let empty = GridSpec {
            alpha: GridAxis::new(1.0, 0.5, 0.1),
            beta: GridAxis::point(0.5),
        };
        assert!(find_optimum(Regime::Destructive, 1e3, 1.0, 5.0, &empty).is_err());
    }

    #[test]
    fn nondestructive_alpha_optimum_near_one_at_large_lambda() {
        let o = find_optimum(Regime::Nondestructive, 1e7, 1.0, 5.0, &GridSpec::default()).unwrap();
        assert!((o.alpha - 1.0).abs() <= 0.1, "{o:?}");
    }

    #[test]
    fn axis_values_are_clean() {
        let v = GridAxis::new(0.1, 1.9, 0.01).values();
        assert_eq!(v.len(), 181);
        assert_eq!(v[90], 1.0);
        assert_eq!(v[180], 1.9);
        assert_eq!(GridAxis::new(0.1, 0.9, 0.01).values().len(), 81);
    }

    #[test]
    fn validation() {
        assert!(SearchParams::new(1.0, 0.5, 5.0, 1.0, 0.5, 2.0).is_err());
        assert!(SearchParams::new(1.0, 10.0, 5.0, 2.0, 0.5, 2.0).is_err());
        assert!(SearchParams::new(1.0, 10.0, 5.0, 1.0, 1.0, 2.0).is_err());
        assert!(SearchParams::new(1.0, 10.0, 0.0, 1.0, 0.5, 2.0).is_err());
        assert!(SearchParams::new(1.0, 10.0, 5.0, 1.0, 0.5, 3.0).is_err());
        assert!("sideways".parse::<Regime>().is_err());
        assert_eq!("nondestructive".parse::<Regime>().unwrap(), Regime::Nondestructive);
    }
}

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// L1 weights `b_j = (j+1)^(1-β) - j^(1-β)`, `j = 0..n`.
pub fn l1_weights(n: usize, beta: f64) -> Vec<f64> {
    let e = 1.0 - beta;
    (0..n)
        .map(|j| {
            let j = j as f64;
            (j + 1.0).powf(e) - j.powf(e)
        })
        .collect()
}

/// Caputo derivative of order `β ∈ (0, 1)` by the L1 scheme on a uniform
/// time grid. Entry `n` approximates `D^β f(t_n)`; entry 0 is zero.
pub fn caputo_l1(times: &[f64], values: &[f64], beta: f64) -> Result<Vec<f64>> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::invalid("beta", format!("{beta} outside (0, 1)")));
    }
    if times.len() != values.len() {
        return Err(Error::invalid(
            "values",
            format!("{} samples for {} times", values.len(), times.len()),
        ));
    }
    if times.len() < 2 {
        return Err(Error::Empty("need at least two samples"));
    }
    let dt = times[1] - times[0];
    if !(dt > 0.0) {
        return Err(Error::invalid("times", "spacing must be positive"));
    }
    for w in times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.max(w[1].abs()) {
            return Err(Error::invalid("times", "grid is not uniform"));
        }
    }
    let n = values.len();
    let b = l1_weights(n, beta);
    let scale = dt.powf(-beta) / gamma(2.0 - beta);
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let mut out = vec![0.0; n];
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        // Σ_j b_j (f_{m-j} - f_{m-j-1}) = Σ_j b_j diffs[m-1-j]
        let acc: f64 = (0..m).map(|j| b[j] * diffs[m - 1 - j]).sum();
        *slot = scale * acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, dt: f64) -> Vec<f64> {
        (0..n).map(|i| i as f64 * dt).collect()
    }

    #[test]
    fn constants_annihilated() {
        let t = grid(50, 0.1);
        let d = caputo_l1(&t, &vec![3.7; 50], 0.4).unwrap();
        assert!(d.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn linear_function() {
        // D^β t = t^(1-β) / Γ(2-β); L1 is exact for piecewise-linear f.
        let dt = 1e-3;
        let t = grid(1001, dt);
        let d = caputo_l1(&t, &t, 0.5).unwrap();
        let exact = 1.0 / gamma(1.5);
        assert!((exact - 1.128_379_167_095_512_6).abs() < 1e-12);
        assert!((d[1000] - exact).abs() < 2e-4, "{}", d[1000]);
    }

    #[test]
    fn rejects_non_uniform_and_short() {
        assert!(caputo_l1(&[0.0, 0.1, 0.3], &[0.0; 3], 0.5).is_err());
        assert!(caputo_l1(&[0.0], &[0.0], 0.5).is_err());
        assert!(caputo_l1(&[0.0, 0.1], &[0.0; 2], 1.0).is_err());
    }
}

//! Reference implementations used as test oracles. None of these share code
//! with the library.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

/// Hill estimator of the tail index over the top `k` order statistics.
pub fn hill(samples: &[f64], k: usize) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let xk = s[k];
    let mean_log: f64 = s[..k].iter().map(|x| (x / xk).ln()).sum::<f64>() / k as f64;
    1.0 / mean_log
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// `∫_a^b x^(-p) dx` by Simpson's rule in `u = ln x`.
pub fn pow_integral_numeric(p: f64, a: f64, b: f64) -> f64 {
    simpson(|u| (-(p - 1.0) * u).exp(), a.ln(), b.ln(), 200_000)
}

/// `∫_a^∞ x^(-p) dx` for `p > 1`, via `x = a e^u` truncated where the
/// integrand has decayed by `e^-60`.
pub fn pow_tail_numeric(p: f64, a: f64) -> f64 {
    let u_max = 60.0 / (p - 1.0);
    a.powf(1.0 - p) * simpson(|u| (-(p - 1.0) * u).exp(), 0.0, u_max, 200_000)
}

/// `∫_0^b x^(-p) dx` for `p < 1`, via `x = b e^-u`.
pub fn pow_head_numeric(p: f64, b: f64) -> f64 {
    let u_max = 60.0 / (1.0 - p);
    b.powf(1.0 - p) * simpson(|u| (-(1.0 - p) * u).exp(), 0.0, u_max, 200_000)
}

/// The ratio-of-integrals definition of `<LT>`, evaluated numerically.
pub fn mean_cost_lt_oracle(r_v: f64, lambda: f64, t: f64, alpha: f64, beta: f64) -> f64 {
    let body = pow_integral_numeric(alpha, r_v, lambda) * pow_head_numeric(beta, t);
    let wait_tail = pow_tail_numeric(beta + 1.0, t);
    let tail = lambda * pow_tail_numeric(alpha + 1.0, lambda) * t * wait_tail;
    let norm = pow_tail_numeric(alpha + 1.0, r_v) * wait_tail;
    (body + tail) / norm
}

/// Truncated mean Lévy flight length, numerically.
pub fn levy_mean_length_oracle(r_v: f64, lambda: f64, mu: f64) -> f64 {
    let body = pow_integral_numeric(mu - 1.0, r_v, lambda);
    let tail = lambda * pow_tail_numeric(mu, lambda);
    (body + tail) / pow_tail_numeric(mu, r_v)
}

/// Fixed-Talbot inversion of a Laplace transform at time `t`.
pub fn talbot(f: impl Fn(Complex64) -> Complex64, t: f64, m: usize) -> f64 {
    let r = 2.0 * m as f64 / (5.0 * t);
    let mut sum = 0.5 * (f(Complex64::new(r, 0.0)) * (r * t).exp()).re;
    for k in 1..m {
        let th = k as f64 * PI / m as f64;
        let cot = th.cos() / th.sin();
        let s = Complex64::new(r * th * cot, r * th);
        let sigma = th + (th * cot - 1.0) * cot;
        sum += ((s * t).exp() * f(s) * Complex64::new(1.0, sigma)).re;
    }
    r / m as f64 * sum
}

/// `E_β(-x)` as the Talbot inverse of `s^(β-1) / (s^β + x)` at `t = 1`.
pub fn mittag_leffler_talbot(beta: f64, x: f64) -> f64 {
    talbot(
        |s| s.powf(beta - 1.0) / (s.powf(beta) + x),
        1.0,
        32,
    )
}

/// `e^(x²) erfc(x)` for `x >= 0`: the scaled complementary error function.
/// Uses the Taylor series of erf for small `x` and a Lentz continued
/// fraction beyond.
pub fn erfcx(x: f64) -> f64 {
    if x < 2.0 {
        // erf(x) = 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1))
        let mut term = x;
        let mut sum = x;
        let mut n = 0.0;
        loop {
            n += 1.0;
            term *= -x * x / n;
            let add = term / (2.0 * n + 1.0);
            sum += add;
            if add.abs() <= 1e-18 * sum.abs() {
                break;
            }
        }
        (x * x).exp() * (1.0 - 2.0 / PI.sqrt() * sum)
    } else {
        // erfcx(x) = 1/sqrt(pi) * 1/(x + 1/2/(x + 1/(x + 3/2/(x + ...))))
        let mut f = x;
        for k in (1..200).rev() {
            f = x + (k as f64 / 2.0) / f;
        }
        1.0 / (PI.sqrt() * f)
    }
}

/// Per-mode implicit L1 stepper for `D_t^β u = -a u`, `u(0) = 1`. Returns
/// `u` at `steps * dt`.
pub fn l1_mode_decay(a: f64, beta: f64, dt: f64, steps: usize) -> f64 {
    let g = gamma_2_minus(beta);
    let c = dt.powf(-beta) / g;
    let b: Vec<f64> = (0..steps)
        .map(|j| ((j + 1) as f64).powf(1.0 - beta) - (j as f64).powf(1.0 - beta))
        .collect();
    let mut u = vec![1.0f64; steps + 1];
    for n in 1..=steps {
        let mut hist = 0.0;
        for j in 1..n {
            hist += b[j] * (u[n - j] - u[n - j - 1]);
        }
        u[n] = (c * u[n - 1] - c * hist) / (c + a);
    }
    u[steps]
}

/// `Γ(2 - β)` for `β ∈ [0, 1]` by Lanczos (g = 7, n = 9).
pub fn gamma_2_minus(beta: f64) -> f64 {
    lanczos_gamma(2.0 - beta)
}

pub fn lanczos_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return PI / ((PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, &c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// Naive O(n) periodic DFT, `X_m = Σ x_j e^{-2πi jm/n}`.
pub fn dft(x: &[f64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|m| {
            x.iter()
                .enumerate()
                .map(|(j, &v)| {
                    let ang = -2.0 * PI * (j * m % n) as f64 / n as f64;
                    Complex64::from_polar(v, ang)
                })
                .sum()
        })
        .collect()
}

/// Inverse of [`dft`], real part.
pub fn idft_real(x: &[Complex64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|j| {
            x.iter()
                .enumerate()
                .map(|(m, &v)| {
                    let ang = 2.0 * PI * (j * m % n) as f64 / n as f64;
                    (v * Complex64::from_polar(1.0, ang)).re
                })
                .sum::<f64>()
                / n as f64
        })
        .collect()
}

/// Signed wavenumber of DFT bin `m` on `n` points with spacing `dx`.
pub fn wavenumber(m: usize, n: usize, dx: f64) -> f64 {
    let signed = if m <= n / 2 { m as f64 } else { m as f64 - n as f64 };
    2.0 * PI * signed / (n as f64 * dx)
}

/// First `s ∈ [0, len]` along `p + s d` within `r` of `q` on a periodic
/// square of side `side`, checking every image the segment can reach.
pub fn brute_interception(p: [f64; 2], d: [f64; 2], len: f64, q: [f64; 2], r: f64, side: f64) -> Option<f64> {
    let end = [p[0] + len * d[0], p[1] + len * d[1]];
    let range = |a: f64, b: f64, c: f64| {
        let lo = ((a.min(b) - r - c) / side).floor() as i64 - 1;
        let hi = ((a.max(b) + r - c) / side).ceil() as i64 + 1;
        lo..=hi
    };
    let mut best: Option<f64> = None;
    for ix in range(p[0], end[0], q[0]) {
        for iy in range(p[1], end[1], q[1]) {
            let c = [q[0] + ix as f64 * side, q[1] + iy as f64 * side];
            let w = [c[0] - p[0], c[1] - p[1]];
            let t = w[0] * d[0] + w[1] * d[1];
            let h2 = w[0] * w[0] + w[1] * w[1] - t * t;
            if h2 > r * r {
                continue;
            }
            let s = (t - (r * r - h2).sqrt()).max(0.0);
            if s <= len && t + (r * r - h2).sqrt() >= 0.0 && best.is_none_or(|b| s < b) {
                best = Some(s);
            }
        }
    }
    best
}

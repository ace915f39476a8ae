mod common;

use ctrw_search::efficiency::{
    eta_ctrw, eta_levy, find_optimum, levy_mean_length, mean_cost_lt_closed,
    mean_cost_lt_quadrature, n_mean,
};
use ctrw_search::{GridAxis, GridSpec, Regime, SearchParams};
use proptest::prelude::*;

fn params(lambda: f64, alpha: f64, beta: f64) -> SearchParams {
    SearchParams::new(1.0, lambda, 5.0, alpha, beta, 2.0).unwrap()
}

#[test]
fn cost_matches_ratio_of_integrals() {
    for &(lambda, alpha, beta) in &[
        (100.0, 0.5, 0.5),
        (1e3, 0.3, 0.2),
        (1e5, 1.5, 0.7),
        (10.0, 1.9, 0.9),
        (1e7, 1.0, 0.5),
        (50.0, 0.1, 0.1),
    ] {
        let p = params(lambda, alpha, beta);
        let oracle = common::mean_cost_lt_oracle(1.0, lambda, 5.0, alpha, beta);
        let q = mean_cost_lt_quadrature(&p);
        assert!((q - oracle).abs() / oracle < 1e-7, "{p:?}: {q} vs {oracle}");
        if (alpha - 1.0f64).abs() > 1e-9 {
            let c = mean_cost_lt_closed(&p).unwrap();
            assert!((c - oracle).abs() / oracle < 1e-7, "{p:?}: {c} vs {oracle}");
        }
    }
}

#[test]
fn levy_length_matches_ratio_of_integrals() {
    for &(lambda, mu) in &[(10.0, 1.5), (1e3, 2.0), (1e5, 2.5), (1e7, 1.1), (1e3, 2.9)] {
        let p = SearchParams::new(1.0, lambda, 5.0, 1.0, 0.5, mu).unwrap();
        let oracle = common::levy_mean_length_oracle(1.0, lambda, mu);
        let v = levy_mean_length(&p);
        assert!((v - oracle).abs() / oracle < 1e-7, "{lambda} {mu}: {v} vs {oracle}");
    }
}

#[test]
fn flight_counts_are_powers_of_lambda() {
    let p = params(1e4, 1.2, 0.5);
    assert!((n_mean(&p, Regime::Destructive) - 1e4f64.powf(1.2)).abs() < 1e-6);
    assert!((n_mean(&p, Regime::Nondestructive) - 1e4f64.powf(0.6)).abs() < 1e-9);
}

#[test]
fn zero_beta_cost_is_time_scaled_flight_mean() {
    // Without waits the cost collapses to T * lambda^(1-alpha) r_v^alpha.
    let p = params(1e3, 1.4, 0.0);
    let expect = 5.0 * 1e3f64.powf(-0.4);
    assert!((mean_cost_lt_quadrature(&p) - expect).abs() / expect < 1e-12);
}

#[test]
fn destructive_optimum_sits_at_small_corner() {
    for lambda in [10.0, 1e3, 1e5, 1e7] {
        let o = find_optimum(Regime::Destructive, lambda, 1.0, 5.0, &GridSpec::default()).unwrap();
        assert_eq!((o.alpha, o.beta), (0.1, 0.1), "lambda {lambda}");
    }
}

#[test]
fn optimum_rejects_empty_grid() {
    let g = GridSpec {
        alpha: GridAxis::new(1.0, 0.5, 0.1),
        beta: GridAxis::new(0.1, 0.9, 0.1),
    };
    assert!(find_optimum(Regime::Nondestructive, 1e3, 1.0, 5.0, &g).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_agrees_with_quadrature(
        lambda in 2.0f64..1e7,
        alpha in prop_oneof![0.05f64..0.95, 1.05f64..1.95],
        beta in 0.01f64..0.99,
        t in 0.1f64..100.0,
    ) {
        let p = SearchParams::new(1.0, lambda, t, alpha, beta, 2.0).unwrap();
        let c = mean_cost_lt_closed(&p).unwrap();
        let q = mean_cost_lt_quadrature(&p);
        prop_assert!((c - q).abs() <= 1e-9 * q, "{c} vs {q}");
    }

    #[test]
    fn efficiency_is_positive_and_finite(
        lambda in 2.0f64..1e7,
        alpha in 0.05f64..1.95,
        beta in 0.0f64..0.99,
    ) {
        for regime in Regime::ALL {
            let e = eta_ctrw(&params(lambda, alpha, beta), regime).unwrap().eta;
            prop_assert!(e.is_finite() && e > 0.0);
        }
    }

    #[test]
    fn destructive_levy_decreases_in_mu(lambda in 2.0f64..1e7, mu in 1.01f64..2.9) {
        let p = SearchParams::new(1.0, lambda, 5.0, 1.0, 0.5, mu).unwrap();
        let a = eta_levy(&p, Regime::Destructive).unwrap().eta;
        let b = eta_levy(&p.with_mu(mu + 0.05), Regime::Destructive).unwrap().eta;
        prop_assert!(b < a);
    }

    #[test]
    fn invalid_params_rejected(alpha in 2.0f64..5.0) {
        prop_assert!(SearchParams::new(1.0, 10.0, 5.0, alpha, 0.5, 2.0).is_err());
        prop_assert!(SearchParams::new(1.0, 0.5, 5.0, 1.0, 0.5, 2.0).is_err());
    }
}

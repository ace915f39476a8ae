mod common;

use ctrw_search::fractional::{
    mittag_leffler, mittag_leffler_integral, mittag_leffler_series, series_is_reliable,
};
use proptest::prelude::*;

#[test]
fn half_order_matches_scaled_erfc() {
    for i in 0..=500 {
        let x = i as f64 * 0.01;
        let v = mittag_leffler(0.5, -x).unwrap();
        let oracle = common::erfcx(x);
        assert!((v - oracle).abs() < 1e-10, "x={x}: {v} vs {oracle}");
    }
}

#[test]
fn order_one_is_exponential() {
    for i in 0..=500 {
        let x = i as f64 * 0.1;
        assert!((mittag_leffler(1.0, -x).unwrap() - (-x).exp()).abs() < 1e-12);
    }
}

#[test]
fn matches_talbot_inversion() {
    for beta in [0.2, 0.35, 0.5, 0.65, 0.8, 0.95] {
        for x in [0.05, 0.3, 1.0, 2.5, 4.0, 7.0, 15.0, 40.0] {
            let v = mittag_leffler(beta, -x).unwrap();
            let oracle = common::mittag_leffler_talbot(beta, x);
            assert!(
                (v - oracle).abs() < 1e-8,
                "beta={beta} x={x}: {v} vs {oracle}"
            );
        }
    }
}

#[test]
fn branches_agree_where_both_are_reliable() {
    for beta in [0.8, 0.85, 0.9, 0.95, 0.99] {
        for i in 0..=40 {
            let x = 4.0 + i as f64 * 0.05;
            let s = mittag_leffler_series(beta, -x).unwrap();
            let q = mittag_leffler_integral(beta, -x).unwrap();
            assert!((s - q).abs() < 1e-10, "beta={beta} x={x}: {s} vs {q}");
        }
    }
    assert!(series_is_reliable(0.9, 1.0));
    assert!(!series_is_reliable(0.3, 3.0));
}

#[test]
fn rejects_positive_argument_and_bad_order() {
    assert!(mittag_leffler(0.5, 1.0).is_err());
    assert!(mittag_leffler(0.0, -1.0).is_err());
    assert!(mittag_leffler(1.5, -1.0).is_err());
    assert!(mittag_leffler(0.5, f64::NEG_INFINITY).is_err());
}

proptest! {
    #[test]
    fn completely_monotone_on_negative_axis(beta in 0.05f64..1.0, x in 0.0f64..200.0, dx in 1e-3f64..10.0) {
        let a = mittag_leffler(beta, -x).unwrap();
        let b = mittag_leffler(beta, -(x + dx)).unwrap();
        prop_assert!(a > 0.0 && a <= 1.0);
        prop_assert!(b < a);
    }
}

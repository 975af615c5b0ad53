use std::f64::consts::PI;

use besselsum_core::*;
use proptest::prelude::*;

fn sign(mu: i32) -> f64 {
    if mu % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_parity(mu in 1i32..8, x in 0.05f64..40.0) {
        let a = p_series(-mu, x, &TruncationPolicy::for_args(-mu, x)).unwrap().value;
        let b = p_series(mu, x, &TruncationPolicy::for_args(mu, x)).unwrap().value;
        prop_assert!((sign(mu) * a - b).abs() <= 1e-12 * b.abs().max(1.0));
    }

    #[test]
    fn reflection(mu in 1i32..10, x in 0.1f64..60.0) {
        let s = sign(mu);
        let y = bessel_y(mu, x).unwrap();
        let r = order_deriv_j(-mu, x).unwrap() + s * order_deriv_j(mu, x).unwrap() - s * PI * y;
        prop_assert!(r.abs() <= 1e-12 * (PI * y).abs().max(1.0), "residual {r:e}");
    }

    #[test]
    fn graf_sum_is_delta(mu in 0i32..8, x in 0.05f64..60.0) {
        let v = lemma2_sum(mu, x, &TruncationPolicy::for_args(mu, x)).unwrap().value;
        let expect = if mu == 0 { 1.0 } else { 0.0 };
        prop_assert!((v - expect).abs() <= 1e-10, "{v:e}");
    }

    #[test]
    fn series_matches_closed(mu in 1i32..5, x in 0.2f64..25.0) {
        let s = p_series(mu, x, &TruncationPolicy::for_args(mu, x)).unwrap();
        let c = p_closed(mu, x, &ClosedFormConfig::default()).unwrap();
        prop_assert!((s.value - c.value).abs() <= (s.tail_bound + c.tail_bound).max(1e-9));
    }

    #[test]
    fn neumann_identity_j_integer_order(n in -20i32..20, x in 0.01f64..100.0) {
        let a = bessel_j(n, x).unwrap();
        let b = bessel_j_real_order(n as f64, x.min(40.0)).unwrap();
        if x <= 40.0 {
            prop_assert!((a - b).abs() <= 1e-13, "{a} {b}");
        }
        // J_n is bounded by 1 and J_{-n} = (-1)^n J_n
        prop_assert!(a.abs() <= 1.0);
        prop_assert!((bessel_j(-n, x).unwrap() - sign(n) * a).abs() <= 1e-15);
    }
}

//! Reference values computed independently in 30-digit arithmetic (mpmath:
//! `besselj`, `bessely`, `loggamma`, numerical order differentiation,
//! `meijerg`, and adaptive quadrature), frozen here.

#![allow(clippy::excessive_precision)]

use besselsum_core::*;
use num_complex::Complex64;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn bessel_values() {
    let cases: &[(i32, f64, f64, bool)] = &[
        (1, 1.0, 0.440_050_585_744_933_515_96, true),
        (0, 100.0, 0.019_985_850_304_223_122_424, true),
        (40, 30.0, 0.000_361_202_360_889_658_530_89, true),
        (64, 200.0, -0.034_059_764_963_014_577_214, true),
        (0, 2.0, 0.510_375_672_649_745_119_6, false),
        (5, 150.0, -0.004_652_497_340_417_634_909_6, false),
        (64, 200.0, 0.046_900_697_548_580_260_805, false),
        (3, 0.1, -5_099.332_378_612_904_889_4, false),
    ];
    for &(n, x, expect, is_j) in cases {
        let got = if is_j { bessel_j(n, x) } else { bessel_y(n, x) }.unwrap();
        assert!(rel(got, expect) < 1e-13, "n={n} x={x} j={is_j}: {got} vs {expect}");
    }
}

#[test]
fn complex_log_gamma_values() {
    let cases = [
        ((2.0, 3.0), (-2.092_851_753_092_733_349_6, 2.302_396_543_466_867_626_2)),
        ((-2.5, 0.3), (-0.432_088_892_613_201_920_52, -9.093_345_421_289_741_507_3)),
        ((-50.2, -10.0), (-177.860_744_186_157_272_31, 119.955_236_950_433_087_25)),
        ((1e5, 1e5), (1_007_405.078_374_697_522_8, 1_164_489.329_165_266_573_1)),
    ];
    for ((re, im), (ere, eim)) in cases {
        let (ere, eim): (f64, f64) = (ere, eim);
        let g = log_gamma_complex(Complex64::new(re, im)).unwrap();
        let scale = ere.abs().max(eim.abs()).max(1.0);
        assert!((g.re - ere).abs() < 1e-13 * scale, "{re}+{im}i re: {}", g.re);
        assert!((g.im - eim).abs() < 1e-13 * scale, "{re}+{im}i im: {}", g.im);
    }
}

#[test]
fn order_derivative_values() {
    let cases = [
        (1, 2.0, -0.056_180_760_741_813_101_202),
        (-3, 1.5, 6.422_338_392_968_843_897_4),
        (5, 80.0, 0.090_912_759_833_965_888_038),
    ];
    for (n, x, expect) in cases {
        let got = order_deriv_j(n, x).unwrap();
        assert!(rel(got, expect) < 1e-12, "n={n} x={x}: {got}");
    }
}

#[test]
fn real_order_values() {
    let cases = [
        (0.3, 7.0, 0.256_714_520_951_384_686_36),
        (-2.7, 35.0, 0.088_403_436_716_990_571_4),
        (10.5, 40.0, 0.066_231_235_511_012_013_99),
    ];
    for (nu, x, expect) in cases {
        let got = bessel_j_real_order(nu, x).unwrap();
        assert!((got - expect).abs() < 1e-10, "nu={nu} x={x}: {got}");
    }
}

#[test]
fn lemma_sum_value() {
    let r = lemma1_lhs(1, 1, 2.0, &TruncationPolicy::for_args(2, 2.0)).unwrap();
    assert!((r.value - 0.303_742_299_292_375_964_13).abs() < 1e-14);
}

#[test]
fn tail_integral_values() {
    let spec = QuadSpec::default();
    let cases = [
        (1, 1.0, 1, -0.005_078_734_215_887_131_555_3),
        (1, 1.0, 2, -0.034_258_435_987_319_579_281),
        (2, 0.5, 1, -1.730_696_955_845_308_323),
        (3, 7.0, 2, -0.000_188_470_208_046_860_865_32),
    ];
    for (mu, x, k, expect) in cases {
        let r = if k == 1 {
            integrate_fmu_over_t(mu, x, &spec)
        } else {
            integrate_fmu_over_t2(mu, x, &spec)
        }
        .unwrap();
        assert!(
            (r.value - expect).abs() <= r.err_estimate.max(1e-13),
            "mu={mu} x={x} k={k}: {} (err {:e})",
            r.value,
            r.err_estimate
        );
    }
}

#[test]
fn lemma_integral_values() {
    let spec = QuadSpec::default();
    let fin = lemma1_integral_finite(0, 2, 5.0, &spec).unwrap();
    assert!((fin.value - 0.115_577_905_691_975_635_66).abs() < 1e-12, "{}", fin.value);
    let tail = lemma1_integral_tail(1, 2, 3.0, &spec).unwrap();
    assert!((tail.value + 0.262_988_457_781_848_555_79).abs() < 1e-12, "{}", tail.value);
}

#[test]
fn meijer_values() {
    let cfg = MeijerConfig::default();
    let cases = [
        (MeijerSpec::first(1, 1.0, &cfg), 0.011_461_475_768_844_405_295),
        (MeijerSpec::first(2, 4.0, &cfg), -0.146_495_473_349_574_915_43),
        (MeijerSpec::second(3, 2.25, &cfg), 0.124_716_821_224_347_823_66),
    ];
    for (spec, expect) in cases {
        let g = meijer_g_3024(&spec).unwrap();
        assert!((g.re - expect).abs() < 1e-12, "{spec:?}: {}", g.re);
        assert!(g.err_estimate < 1e-10);
    }
}

#[test]
fn p_values_on_all_routes() {
    let cases = [
        (1, 1.0, -0.433_915_418_204_572_610_6),
        (2, 1.0, 0.723_382_644_620_792_387_7),
        (-2, 1.0, 0.723_382_644_620_792_387_7),
        (3, 2.0, -0.358_984_787_982_066_076_3),
        (1, 5.0, 0.049_910_899_880_634_434_19),
    ];
    let settings = EvalSettings::default();
    for (mu, x, expect) in cases {
        for route in Route::ALL {
            let r = EvalRequest::new(mu, x, route).evaluate(&settings).unwrap();
            assert!(
                (r.value - expect).abs() < 1e-11,
                "mu={mu} x={x} {route}: {} (bound {:e})",
                r.value,
                r.tail_bound
            );
        }
    }
}

//! Large-argument (Hankel) expansions.
//!
//! `H^(1)_nu(x) ~ sqrt(2/(pi x)) e^{i w} sum_k i^k a_k(nu) / x^k`, with
//! `w = x - nu pi/2 - pi/4`. The coefficients are reused by the analytic
//! quadrature tails, which integrate products of two such expansions.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// `a_k(nu)` for `k = 0..len`.
pub(crate) fn hankel_coeffs(nu: f64, len: usize) -> Vec<f64> {
    let mut a = Vec::with_capacity(len);
    let four_nu2 = 4.0 * nu * nu;
    let mut c = 1.0;
    for k in 0..len {
        a.push(c);
        let odd = (2 * k + 1) as f64;
        c *= (four_nu2 - odd * odd) / (8.0 * (k + 1) as f64);
    }
    a
}

/// `(J_nu(x), Y_nu(x))` for small integer `nu` and `x >= 25`; the asymptotic
/// series is summed up to its smallest term.
pub(crate) fn jy_large(nu: u32, x: f64) -> (f64, f64) {
    let four_nu2 = 4.0 * (nu as f64) * (nu as f64);
    let mut p: f64 = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200usize {
        let odd = (2 * k - 1) as f64;
        term *= (four_nu2 - odd * odd) / (8.0 * k as f64 * x);
        let mag = term.abs();
        if mag >= last || mag < 1e-18 * p.abs() {
            break;
        }
        last = mag;
        // i^k split between P (even k) and Q (odd k)
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
    }
    // w = x - nu pi/2 - pi/4, rotated exactly by quarter turns
    let (s, c) = x.sin_cos();
    let (cw0, sw0) = ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2);
    let (cw, sw) = match nu % 4 {
        0 => (cw0, sw0),
        1 => (sw0, -cw0),
        2 => (-cw0, -sw0),
        _ => (-sw0, cw0),
    };
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * cw - q * sw), amp * (p * sw + q * cw))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_for_half_order_vanish() {
        // nu = 1/2 gives an exact single-term expansion
        let a = hankel_coeffs(0.5, 5);
        assert_eq!(a[0], 1.0);
        assert!(a[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn first_coefficient() {
        let a = hankel_coeffs(1.0, 3);
        assert!((a[1] - 3.0 / 8.0).abs() < 1e-16);
        assert!((a[2] - 3.0 * -5.0 / 128.0).abs() < 1e-16);
    }
}

//! Closed-form tails `int_T^inf` of Bessel products.
//!
//! Both Hankel expansions are multiplied out, which leaves sums of
//! `e^{2it} t^{-p}` (integrated by the repeated-parts series for `E_p`) and,
//! for `J_p J_q`, a non-oscillating power series integrated term by term.

use num_complex::Complex64;

use crate::special_fn::hankel::hankel_coeffs;

const MAX_TERMS: usize = 48;
const TERM_FLOOR: f64 = 1e-18;

/// `i^n` for any integer n.
pub(crate) fn i_pow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `E_p(T) = int_T^inf e^{2it} t^{-p} dt`
/// `= -e^{2iT}/(2i) sum_j (p)_j (2iT)^{-j} T^{-p}`, summed to its smallest term.
/// Returns the value and the magnitude of the first omitted term.
pub(crate) fn e_power(p: usize, t: f64) -> (Complex64, f64) {
    let step = Complex64::new(0.0, 2.0 * t).inv();
    let mut rho = Complex64::new(1.0, 0.0);
    let mut sum = rho;
    let mut omitted = 0.0;
    for j in 0..400usize {
        let next = rho * ((p + j) as f64) * step;
        if next.norm() >= rho.norm() {
            omitted = next.norm();
            break;
        }
        rho = next;
        sum += rho;
        if rho.norm() < TERM_FLOOR * sum.norm() {
            break;
        }
    }
    let (s, c) = (2.0 * t).sin_cos();
    let lead = -Complex64::new(c, s) / Complex64::new(0.0, 2.0) * t.powi(-(p as i32));
    (lead * sum, lead.norm() * omitted)
}

fn convolve(a: &[f64], b: &[f64], alternate: bool) -> Vec<f64> {
    (0..a.len())
        .map(|m| {
            (0..=m)
                .map(|j| {
                    let k = m - j;
                    let s = if alternate && k % 2 == 1 { -1.0 } else { 1.0 };
                    s * a[j] * b[k]
                })
                .sum()
        })
        .collect()
}

/// `int_T^inf f_mu(t) t^{-k} dt` with `f_mu = (pi/4)(Y_mu J_0 + J_mu Y_0)`.
///
/// `f_mu = (1/2t) Im( e^{i(2t - (mu+1) pi/2)} sum_m i^m d_m t^{-m} )`, where d is
/// the convolution of the two Hankel coefficient sequences.
pub(crate) fn fmu_tail(mu: i64, k: usize, t: f64) -> (f64, f64) {
    let d = convolve(
        &hankel_coeffs(mu as f64, MAX_TERMS),
        &hankel_coeffs(0.0, MAX_TERMS),
        false,
    );
    let (sum, err) = oscillating_sum(&d, k + 1, t);
    let phase = i_pow(-(mu + 1));
    (0.5 * (phase * sum).im, 0.5 * err)
}

/// `int_T^inf J_p(t) J_q(t) / t dt`.
///
/// `J_p J_q = (1/(pi t)) Re( e^{i(2t - (p+q+1) pi/2)} sum_m i^m d_m t^{-m}
///                          + i^{q-p} sum_m i^m e_m t^{-m} )`.
pub(crate) fn bessel_product_tail(p: i64, q: i64, t: f64) -> (f64, f64) {
    let ap = hankel_coeffs(p as f64, MAX_TERMS);
    let aq = hankel_coeffs(q as f64, MAX_TERMS);
    let d = convolve(&ap, &aq, false);
    let e = convolve(&ap, &aq, true);
    let (osc, osc_err) = oscillating_sum(&d, 2, t);
    let osc = i_pow(-(p + q + 1)) * osc;

    let mut smooth = Complex64::new(0.0, 0.0);
    let mut smooth_err = 0.0;
    let mut last = f64::INFINITY;
    for (m, &em) in e.iter().enumerate() {
        // int_T^inf t^{-m-2} dt
        let term = em * t.powi(-(m as i32) - 1) / (m + 1) as f64;
        if term.abs() > last {
            smooth_err = term.abs();
            break;
        }
        smooth += i_pow(m as i64) * term;
        if term != 0.0 {
            last = term.abs();
            if last < TERM_FLOOR * smooth.norm() {
                break;
            }
        }
    }
    let smooth = i_pow(q - p) * smooth;
    (
        (osc + smooth).re / std::f64::consts::PI,
        (osc_err + smooth_err) / std::f64::consts::PI,
    )
}

/// `sum_m i^m c_m E_{m+base}(T)`, truncated where `|c_m| T^{-m}` bottoms out.
fn oscillating_sum(c: &[f64], base: usize, t: f64) -> (Complex64, f64) {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut last = f64::INFINITY;
    let scale = t.powi(-(base as i32)) * 0.5;
    for (m, &cm) in c.iter().enumerate() {
        let size = cm.abs() * t.powi(-(m as i32));
        if size > last {
            err += size * scale;
            break;
        }
        let (ep, ee) = e_power(m + base, t);
        sum += i_pow(m as i64) * cm * ep;
        err += cm.abs() * ee;
        if size > 0.0 {
            last = size;
            if size < TERM_FLOOR * c[0].abs() {
                break;
            }
        }
    }
    (sum, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_kronrod::gk15;

    fn brute<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, step: f64) -> f64 {
        let n = ((b - a) / step).ceil() as usize;
        let h = (b - a) / n as f64;
        (0..n)
            .map(|i| gk15(&f, a + i as f64 * h, a + (i + 1) as f64 * h).value)
            .sum()
    }

    #[test]
    fn e_power_against_difference_of_tails() {
        // E_p(T1) - E_p(T2) = int_T1^T2 e^{2it} t^{-p}
        for p in [1usize, 2, 5] {
            let (t1, t2) = (40.0, 90.0);
            let direct_re = brute(|t| (2.0 * t).cos() * t.powi(-(p as i32)), t1, t2, 0.25);
            let direct_im = brute(|t| (2.0 * t).sin() * t.powi(-(p as i32)), t1, t2, 0.25);
            let diff = e_power(p, t1).0 - e_power(p, t2).0;
            assert!((diff.re - direct_re).abs() < 1e-15, "p={p}");
            assert!((diff.im - direct_im).abs() < 1e-15, "p={p}");
        }
    }

    #[test]
    fn fmu_tail_is_consistent_between_handover_points() {
        // moving T from 120 to 160 must be compensated by direct quadrature
        for mu in [1i64, 4] {
            for k in [1usize, 2] {
                let f = |t: f64| {
                    let [jm, ym, j0, y0] = crate::special_fn::jy_with_zero(mu as usize, t);
                    std::f64::consts::FRAC_PI_4 * (ym * j0 + jm * y0) / t.powi(k as i32)
                };
                let middle = brute(f, 120.0, 160.0, 0.25);
                let a = fmu_tail(mu, k, 120.0).0;
                let b = fmu_tail(mu, k, 160.0).0;
                assert!((a - b - middle).abs() < 1e-16, "mu={mu} k={k}");
            }
        }
    }

    #[test]
    fn product_tail_is_consistent_between_handover_points() {
        for (p, q) in [(1i64, 0i64), (3, 1), (5, 2)] {
            let f = |t: f64| {
                let (jp, jq) = crate::special_fn::j_two(p as usize, q as usize, t);
                jp * jq / t
            };
            let middle = brute(f, 100.0, 150.0, 0.25);
            let a = bessel_product_tail(p, q, 100.0).0;
            let b = bessel_product_tail(p, q, 150.0).0;
            assert!((a - b - middle).abs() < 1e-15, "p={p} q={q}");
        }
    }

    #[test]
    fn i_pow_cycles() {
        assert_eq!(i_pow(-1), Complex64::new(0.0, -1.0));
        assert_eq!(i_pow(6), Complex64::new(-1.0, 0.0));
    }
}

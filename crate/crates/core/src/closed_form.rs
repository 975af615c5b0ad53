//! `P_mu(x)` from `f_mu` and its two tail integrals:
//!
//! ```text
//! P_mu(x) = (-1)^mu ( -f_mu(x) + mu^2 int_x^inf f_mu/t dt
//!                     + (1 - mu^2) x int_x^inf f_mu/t^2 dt + C x ),   C = 0
//! ```
//!
//! plus the leading large-x behaviour of `f_mu` and `P_mu`.

use crate::error::{Error, Result};
use crate::quadrature::{self, f_mu_raw, QuadSpec};
use crate::special_fn::{Argument, OrderIndex, ARGUMENT_LIMIT};
use crate::summation::{Route, SumResult};

/// Slack added to the quadrature estimates for the Bessel kernels themselves.
pub const KERNEL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClosedFormConfig {
    pub quad: QuadSpec,
    /// Coefficient of the linear term. Always 0 on public paths; only the
    /// constant-estimation experiment plants a nonzero value.
    pub(crate) constant_c: f64,
}

impl ClosedFormConfig {
    pub fn new(quad: QuadSpec) -> Self {
        ClosedFormConfig {
            quad,
            constant_c: 0.0,
        }
    }

    pub fn constant_c(&self) -> f64 {
        self.constant_c
    }
}

fn check_x(x: f64) -> Result<f64> {
    let x = Argument::positive(x)?.get();
    if x > ARGUMENT_LIMIT {
        return Err(Error::ArgumentDomain {
            x,
            reason: "x above the supported limit of 200",
        });
    }
    Ok(x)
}

/// `f_mu(x) = (pi/4)(Y_mu(x) J_0(x) + J_mu(x) Y_0(x))`.
pub fn f_mu(mu: i32, x: f64) -> Result<f64> {
    OrderIndex::new(mu)?;
    let x = check_x(x)?;
    Ok(f_mu_raw(mu.into(), x))
}

/// Closed form with `C = 0`. `mu = 0` is refused: the derivation only covers
/// nonzero orders, and `P_0` differs from the formula through the `delta_{mu,0}`
/// term.
pub fn p_closed(mu: i32, x: f64, cfg: &ClosedFormConfig) -> Result<SumResult> {
    let order = OrderIndex::new(mu)?;
    if mu == 0 {
        return Err(Error::ZeroOrderExcluded);
    }
    let x = check_x(x)?;
    let m2 = f64::from(mu) * f64::from(mu);
    let i1 = quadrature::integrate_fmu_over_t(mu, x, &cfg.quad)?;
    let i2 = quadrature::integrate_fmu_over_t2(mu, x, &cfg.quad)?;
    let f = f_mu_raw(mu.into(), x);
    let inner = -f + m2 * i1.value + (1.0 - m2) * x * i2.value + cfg.constant_c * x;
    let budget = m2 * i1.err_estimate + (1.0 - m2).abs() * x * i2.err_estimate + KERNEL_SLACK;
    Ok(SumResult {
        value: order.parity() * inner,
        terms_used: i1.panels_used + i2.panels_used,
        tail_bound: budget,
        route: Route::Closed,
    })
}

/// `(-1)^mu cos(2x - mu pi/2) / (2x)`.
pub fn p_asymptotic(mu: i32, x: f64) -> f64 {
    let s = if mu % 2 == 0 { 1.0 } else { -1.0 };
    s * quarter_cos(x, mu) / (2.0 * x)
}

/// `-cos(2x - mu pi/2) / (2x)`.
pub fn f_asymptotic(mu: i32, x: f64) -> f64 {
    -quarter_cos(x, mu) / (2.0 * x)
}

/// `cos(2x - mu pi/2)` with the quarter turns applied exactly.
fn quarter_cos(x: f64, mu: i32) -> f64 {
    let (s, c) = (2.0 * x).sin_cos();
    match mu.rem_euclid(4) {
        0 => c,
        1 => s,
        2 => -c,
        _ => -s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn f_mu_parity_and_zero_order() {
        let x = 2.0;
        assert!((f_mu(-3, x).unwrap() + f_mu(3, x).unwrap()).abs() < 1e-13);
        let j0 = crate::bessel_j(0, 1.0).unwrap();
        let y0 = crate::bessel_y(0, 1.0).unwrap();
        assert!((f_mu(0, 1.0).unwrap() - FRAC_PI_2 * j0 * y0).abs() < 1e-13);
    }

    #[test]
    fn f_mu_leading_behaviour() {
        let x = 10.0;
        assert!((f_mu(1, x).unwrap() - f_asymptotic(1, x)).abs() <= 0.01);
        assert!((f_asymptotic(1, x) + (20.0f64).sin() / 20.0).abs() < 1e-16);
    }

    #[test]
    fn asymptote_reductions() {
        for &x in &[0.7, 3.0, 41.0] {
            assert!((p_asymptotic(1, x) + (2.0 * x).sin() / (2.0 * x)).abs() < 1e-15);
            assert!((p_asymptotic(2, x) + (2.0 * x).cos() / (2.0 * x)).abs() < 1e-15);
            assert!((x * f_asymptotic(0, x) + 0.5 * (2.0 * x).cos()).abs() < 1e-15);
            // odd orders flip sign under mu -> -mu
            assert!((f_asymptotic(-1, x) + f_asymptotic(1, x)).abs() < 1e-15);
            assert!((f_asymptotic(-2, x) - f_asymptotic(2, x)).abs() < 1e-15);
            let direct = -(2.0 * x - 3.0 * PI / 2.0).cos() / (2.0 * x);
            assert!((f_asymptotic(3, x) - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_order_is_refused() {
        assert_eq!(
            p_closed(0, 1.0, &ClosedFormConfig::default()),
            Err(Error::ZeroOrderExcluded)
        );
    }
}

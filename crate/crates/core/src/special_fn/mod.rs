//! Bessel, order-derivative and gamma kernels.
//!
//! All public entry points validate their arguments against [`ORDER_LIMIT`]
//! and [`ARGUMENT_LIMIT`] and refuse instead of returning degraded values.

pub(crate) mod bessel;
pub(crate) mod dd;
mod gamma;
pub(crate) mod hankel;

pub use bessel::BesselTable;
pub use gamma::{ln_gamma, log_gamma_complex, EULER_GAMMA};

pub(crate) use bessel::{j_int, j_two, jy_with_zero, y_int};

use crate::error::{Error, Result};

/// Largest supported |order| for the public kernels.
pub const ORDER_LIMIT: i64 = 64;
/// Largest supported argument for the public kernels.
pub const ARGUMENT_LIMIT: f64 = 200.0;
/// Largest argument accepted by [`bessel_j_real_order`].
pub const REAL_ORDER_ARGUMENT_LIMIT: f64 = 40.0;

/// Integer Bessel order, `|n| <= ORDER_LIMIT`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIndex(i32);

impl OrderIndex {
    pub fn new(n: i32) -> Result<Self> {
        if i64::from(n).abs() > ORDER_LIMIT {
            return Err(Error::OrderLimit {
                order: n.into(),
                limit: ORDER_LIMIT,
            });
        }
        Ok(OrderIndex(n))
    }

    pub fn get(self) -> i32 {
        self.0
    }

    pub fn abs(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    /// `(-1)^n`
    pub fn parity(self) -> f64 {
        if self.0 % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Finite, strictly positive Bessel argument.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Argument(f64);

impl Argument {
    pub fn positive(x: f64) -> Result<Self> {
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::ArgumentDomain {
                x,
                reason: "expected a finite x > 0",
            });
        }
        Ok(Argument(x))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

fn check_order(n: i64) -> Result<()> {
    if n.abs() > ORDER_LIMIT {
        return Err(Error::OrderLimit {
            order: n,
            limit: ORDER_LIMIT,
        });
    }
    Ok(())
}

fn check_arg(x: f64, allow_zero: bool) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::ArgumentDomain {
            x,
            reason: "non-finite argument",
        });
    }
    if x < 0.0 || (!allow_zero && x == 0.0) {
        return Err(Error::ArgumentDomain {
            x,
            reason: if allow_zero {
                "expected x >= 0"
            } else {
                "expected x > 0 (function diverges at the origin)"
            },
        });
    }
    if x > ARGUMENT_LIMIT {
        return Err(Error::ArgumentDomain {
            x,
            reason: "x above the supported limit of 200",
        });
    }
    Ok(())
}

/// Bessel function of the first kind, integer order. `J_{-n} = (-1)^n J_n`.
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    check_order(n.into())?;
    check_arg(x, true)?;
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    Ok(j_int(n.into(), x))
}

/// Bessel function of the second kind, integer order. `Y_{-n} = (-1)^n Y_n`.
pub fn bessel_y(n: i32, x: f64) -> Result<f64> {
    check_order(n.into())?;
    check_arg(x, false)?;
    Ok(y_int(n.into(), x))
}

/// `J_nu(x)` for real order from the ascending series (`0 <= x <= 40`).
/// Integer orders are forwarded to [`bessel_j`].
pub fn bessel_j_real_order(nu: f64, x: f64) -> Result<f64> {
    if !nu.is_finite() || nu.abs() > ORDER_LIMIT as f64 {
        return Err(Error::OrderLimit {
            order: nu as i64,
            limit: ORDER_LIMIT,
        });
    }
    if !x.is_finite() || !(0.0..=REAL_ORDER_ARGUMENT_LIMIT).contains(&x) {
        return Err(Error::ArgumentDomain {
            x,
            reason: "real-order series needs 0 <= x <= 40",
        });
    }
    if nu == nu.trunc() {
        return bessel_j(nu as i32, x);
    }
    if x == 0.0 {
        if nu > 0.0 {
            return Ok(0.0);
        }
        return Err(Error::ArgumentDomain {
            x,
            reason: "J_nu(0) is infinite for negative non-integer nu",
        });
    }
    Ok(bessel::j_real_series(nu, x))
}

/// Derivative of `J_nu(x)` with respect to the order at integer `nu = n`.
///
/// `n = 0` returns `(pi/2) Y_0(x)`; positive orders use a Neumann expansion in
/// J; negative orders are reflected through
/// `Jhat_{-m} + (-1)^m Jhat_m = (-1)^m pi Y_m`.
pub fn order_deriv_j(n: i32, x: f64) -> Result<f64> {
    check_order(n.into())?;
    check_arg(x, false)?;
    Ok(bessel::jhat_int(n.into(), x))
}

/// Order derivative from the finite-sum representation built on `Y_n`.
/// Only well conditioned while `n` stays below `x`.
pub fn order_deriv_j_finite_sum(n: u32, x: f64) -> Result<f64> {
    check_order(n.into())?;
    check_arg(x, false)?;
    Ok(bessel::jhat_finite_sum(n as usize, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn origin_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bessel_j(65, 1.0), Err(Error::OrderLimit { .. })));
        assert!(matches!(bessel_j(1, f64::NAN), Err(Error::ArgumentDomain { .. })));
        assert!(matches!(bessel_j(1, 200.5), Err(Error::ArgumentDomain { .. })));
        assert!(matches!(bessel_y(0, 0.0), Err(Error::ArgumentDomain { .. })));
        assert!(matches!(bessel_y(0, -1.0), Err(Error::ArgumentDomain { .. })));
        assert!(order_deriv_j(2, 0.0).is_err());
        assert!(bessel_j_real_order(0.5, 41.0).is_err());
        assert!(OrderIndex::new(-64).is_ok());
        assert!(OrderIndex::new(-65).is_err());
        assert!(Argument::positive(0.0).is_err());
    }

    #[test]
    fn reflection_is_exact() {
        for n in 1..12 {
            for &x in &[0.3, 4.0, 33.0] {
                let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(bessel_j(-n, x).unwrap(), s * bessel_j(n, x).unwrap());
                assert_eq!(bessel_y(-n, x).unwrap(), s * bessel_y(n, x).unwrap());
            }
        }
        assert_eq!(bessel_y(-2, 5.0).unwrap(), bessel_y(2, 5.0).unwrap());
    }

    #[test]
    fn wronskian_at_one() {
        let x = 1.0;
        let w = bessel_j(1, x).unwrap() * bessel_y(0, x).unwrap()
            - bessel_j(0, x).unwrap() * bessel_y(1, x).unwrap();
        assert!((w - 2.0 / (PI * x)).abs() < 1e-15);
    }

    #[test]
    fn jhat_zero_is_half_pi_y0() {
        for &x in &[0.1, 2.0, 30.0] {
            assert_eq!(
                order_deriv_j(0, x).unwrap(),
                std::f64::consts::FRAC_PI_2 * bessel_y(0, x).unwrap()
            );
        }
    }

    #[test]
    fn jhat_reflection_relation() {
        let (mu, x) = (2, 1.5);
        let lhs = order_deriv_j(-mu, x).unwrap() + order_deriv_j(mu, x).unwrap();
        let rhs = PI * bessel_y(mu, x).unwrap();
        assert!((lhs - rhs).abs() < 1e-13 * rhs.abs());
    }

    #[test]
    fn real_order_half_integer_closed_form() {
        let x = 2.0;
        let expect = (2.0 / (PI * x)).sqrt() * x.sin();
        let got = bessel_j_real_order(0.5, x).unwrap();
        assert!((got - expect).abs() < 1e-15);
        // J_{-1/2}(x) = sqrt(2/(pi x)) cos x
        let got = bessel_j_real_order(-0.5, x).unwrap();
        assert!((got - (2.0 / (PI * x)).sqrt() * x.cos()).abs() < 1e-15);
    }

    #[test]
    fn real_order_matches_integer_order() {
        assert!((bessel_j_real_order(0.0, 1.0).unwrap() - bessel_j(0, 1.0).unwrap()).abs() < 1e-12);
        assert!((bessel_j_real_order(2.0, 3.0).unwrap() - bessel_j(2, 3.0).unwrap()).abs() < 1e-12);
        // the series path itself, just off the integer
        let near = bessel::j_real_series(2.0, 3.0);
        assert!((near - bessel_j(2, 3.0).unwrap()).abs() < 1e-14);
    }
}

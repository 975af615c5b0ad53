//! Real and complex log-gamma.
//!
//! Both use upward recurrence to |z| >= 10 followed by the Stirling series
//! with ten Bernoulli terms; the left half-plane goes through reflection.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const STIRLING_SHIFT: f64 = 10.0;

// B_{2k} / (2k (2k - 1)), k = 1..=10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// sin(pi x) with exact argument reduction.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

fn stirling_real(x: f64) -> f64 {
    let w = 1.0 / (x * x);
    let mut s = 0.0;
    for c in STIRLING.iter().rev() {
        s = s * w + c;
    }
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + s / x
}

fn stirling_complex(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let w = inv * inv;
    let mut s = Complex64::new(0.0, 0.0);
    for c in STIRLING.iter().rev() {
        s = s * w + c;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + s * inv
}

/// Returns `(ln|Gamma(x)|, sign(Gamma(x)))`.
pub(crate) fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::ArgumentDomain {
            x,
            reason: "log-gamma needs a finite argument",
        });
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::GammaPole { re: x, im: 0.0 });
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let (lg, _) = ln_gamma_signed(1.0 - x)?;
        return Ok((LN_PI - s.abs().ln() - lg, s.signum()));
    }
    let mut x = x;
    let mut prod = 1.0;
    while x < STIRLING_SHIFT {
        prod *= x;
        x += 1.0;
    }
    Ok((stirling_real(x) - prod.ln(), 1.0))
}

/// ln|Gamma(x)| together with the sign of Gamma(x).
pub fn ln_gamma(x: f64) -> Result<(f64, f64)> {
    ln_gamma_signed(x)
}

/// 1/Gamma(x), zero at the poles.
pub(crate) fn rgamma(x: f64) -> f64 {
    match ln_gamma_signed(x) {
        Ok((lg, sign)) => sign * (-lg).exp(),
        Err(_) => 0.0,
    }
}

/// Principal branch of log Gamma(z): analytic off the negative real axis and
/// real on the positive real axis. On the negative real axis the value is the
/// limit from above.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::ArgumentDomain {
            x: z.re,
            reason: "log-gamma needs a finite argument",
        });
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor() {
        return Err(Error::GammaPole { re: z.re, im: z.im });
    }
    if z.im < 0.0 {
        return log_gamma_complex(z.conj()).map(|v| v.conj());
    }
    if z.re < 0.5 {
        // ln Gamma(z) = ln pi - L(z) - ln Gamma(1 - z) with L a branch of
        // ln sin(pi z) that is continuous on Im z >= 0 and real at z = 1/4.
        let i = Complex64::i();
        let w = (2.0 * PI * i * z).exp();
        let l = Complex64::new(-LN_2, FRAC_PI_2) - i * PI * z + (1.0 - w).ln();
        let rest = log_gamma_complex(1.0 - z)?;
        return Ok(LN_PI - l - rest);
    }
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < STIRLING_SHIFT {
        shift += z.ln();
        z += 1.0;
    }
    Ok(stirling_complex(z) - shift)
}

/// psi(n + 1) for integer n >= 0.
pub(crate) fn digamma_int_plus_one(n: usize) -> f64 {
    let mut h = 0.0;
    for k in 1..=n {
        h += 1.0 / k as f64;
    }
    h - EULER_GAMMA
}

//! `G^{3,0}_{2,4}` by Mellin–Barnes quadrature, and the Meijer-G form of `P_mu`.
//!
//! ```text
//! G(z) = 1/(2 pi i) int_L  Gamma(b1-s) Gamma(b2-s) Gamma(b3-s) z^s
//!                          / (Gamma(1-b4+s) Gamma(a1-s) Gamma(a2-s))  ds
//! ```
//!
//! On a vertical line the Gamma ratio only decays algebraically and the
//! integral does not converge for these parameters, so `L` is the parabola
//! `s(t) = sigma + c t^2 + i t`. It crosses the real axis once, left of every
//! pole `b_j + k`, and runs off to `Re s -> +inf` where the integrand decays
//! super-exponentially. The trapezoid rule in `t` then converges geometrically.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special_fn::{jy_with_zero, log_gamma_complex, Argument, OrderIndex};
use crate::summation::{Route, SumResult};

/// Minimum distance between the contour crossing and the nearest pole.
pub const MIN_POLE_DISTANCE: f64 = 0.05;
/// Largest accepted `|g(+-H)| / max |g|` at the truncation points.
pub const DECAY_RATIO_LIMIT: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeijerConfig {
    pub contour_height: f64,
    /// Odd, so that the half-node subgrid used for the error estimate nests.
    pub nodes: usize,
    /// Crossing point `sigma = min(b1, b2, b3) - sigma_offset`.
    pub sigma_offset: f64,
    /// Parabola curvature; `None` picks `min(0.1, 0.5/x)`.
    pub curvature: Option<f64>,
    /// Largest x accepted by [`p_meijer`].
    pub x_max: f64,
}

impl Default for MeijerConfig {
    fn default() -> Self {
        MeijerConfig {
            contour_height: 60.0,
            nodes: 4001,
            sigma_offset: 0.75,
            curvature: None,
            x_max: 30.0,
        }
    }
}

/// Parameters of one `G^{3,0}_{2,4}(z | a1, a2; b1, b2, b3 | b4)` evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeijerSpec {
    pub a: [f64; 2],
    pub b: [f64; 4],
    pub z: f64,
    pub contour_sigma: f64,
    pub contour_height: f64,
    pub nodes: usize,
    pub curvature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeijerValue {
    pub re: f64,
    pub im: f64,
    pub err_estimate: f64,
    pub nodes: usize,
}

impl MeijerSpec {
    pub fn new(a: [f64; 2], b: [f64; 4], z: f64, cfg: &MeijerConfig) -> Self {
        let bmin = b[0].min(b[1]).min(b[2]);
        let curvature = cfg.curvature.unwrap_or_else(|| (0.5 / z.sqrt()).min(0.1));
        MeijerSpec {
            a,
            b,
            z,
            contour_sigma: bmin - cfg.sigma_offset,
            contour_height: cfg.contour_height,
            nodes: cfg.nodes,
            curvature,
        }
    }

    /// `(1/2, 1; -mu/2, mu/2, mu/2 | -mu/2)`
    pub fn first(mu: i32, z: f64, cfg: &MeijerConfig) -> Self {
        let h = 0.5 * f64::from(mu);
        Self::new([0.5, 1.0], [-h, h, h, -h], z, cfg)
    }

    /// `(-1/2, 1; -(mu+1)/2, (mu-1)/2, (mu-1)/2 | -(mu+1)/2)`
    pub fn second(mu: i32, z: f64, cfg: &MeijerConfig) -> Self {
        let m = f64::from(mu);
        let lo = -0.5 * (m + 1.0);
        let hi = 0.5 * (m - 1.0);
        Self::new([-0.5, 1.0], [lo, hi, hi, lo], z, cfg)
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.contour_sigma = sigma;
        self
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_height(mut self, height: f64) -> Self {
        self.contour_height = height;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.z > 0.0) || !self.z.is_finite() {
            return Err(Error::ArgumentDomain {
                x: self.z,
                reason: "Meijer-G argument must be finite and > 0",
            });
        }
        if self.nodes < 5 || self.nodes.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "nodes must be odd and >= 5, got {}",
                self.nodes
            )));
        }
        if !(self.contour_height > 0.0) || !(self.curvature > 0.0) {
            return Err(Error::InvalidConfig(
                "contour height and curvature must be > 0".into(),
            ));
        }
        let pole = self.b[0].min(self.b[1]).min(self.b[2]);
        let distance = pole - self.contour_sigma;
        if !(distance >= MIN_POLE_DISTANCE) {
            return Err(Error::ContourTooClose {
                sigma: self.contour_sigma,
                pole,
                distance,
            });
        }
        Ok(())
    }

    /// The Mellin–Barnes integrand at `s` (without `ds`). Poles of the
    /// denominator Gammas give exact zeros.
    pub fn integrand(&self, s: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let mut lg = s * self.z.ln();
        for &bj in &self.b[..3] {
            match log_gamma_complex(bj - s) {
                Ok(v) => lg += v,
                Err(_) => return Complex64::new(f64::INFINITY, 0.0),
            }
        }
        let denominators = [one * (1.0 - self.b[3]) + s, self.a[0] - s, self.a[1] - s];
        for d in denominators {
            match log_gamma_complex(d) {
                Ok(v) => lg -= v,
                Err(_) => return Complex64::new(0.0, 0.0),
            }
        }
        if lg.re < -745.0 {
            return Complex64::new(0.0, 0.0);
        }
        lg.exp()
    }

    fn point(&self, t: f64) -> (Complex64, Complex64) {
        let s = Complex64::new(self.contour_sigma + self.curvature * t * t, t);
        let ds = Complex64::new(2.0 * self.curvature * t, 1.0);
        (s, ds)
    }
}

/// Evaluates `G^{3,0}_{2,4}` on the parabolic contour.
///
/// The error estimate is the change against the trapezoid sum on every other
/// node, plus a rounding term.
pub fn meijer_g_3024(spec: &MeijerSpec) -> Result<MeijerValue> {
    spec.validate()?;
    let n = spec.nodes;
    let h = 2.0 * spec.contour_height / (n - 1) as f64;
    let values: Vec<Complex64> = (0..n)
        .map(|i| {
            let t = -spec.contour_height + i as f64 * h;
            let (s, ds) = spec.point(t);
            spec.integrand(s) * ds
        })
        .collect();
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Quadrature("non-finite Mellin-Barnes integrand".into()));
    }
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let edge = values[0].norm().max(values[n - 1].norm());
    if peak > 0.0 && edge > DECAY_RATIO_LIMIT * peak {
        return Err(Error::InsufficientDecay { ratio: edge / peak });
    }
    let trapezoid = |stride: usize| -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut i = 0;
        while i < n {
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            sum += values[i] * w;
            i += stride;
        }
        sum * (h * stride as f64)
    };
    let scale = Complex64::new(0.0, 2.0 * PI).inv();
    let fine = trapezoid(1) * scale;
    let coarse = trapezoid(2) * scale;
    let abs_sum: f64 = values.iter().map(|v| v.norm()).sum::<f64>() * h / (2.0 * PI);
    Ok(MeijerValue {
        re: fine.re,
        im: fine.im,
        err_estimate: (fine - coarse).norm() + 4.0 * f64::EPSILON * abs_sum,
        nodes: n,
    })
}

/// ```text
/// P_mu(x) = (1/4)(-1)^{mu+1} ( pi (Y_0 J_mu + J_0 Y_mu)
///           + sqrt(pi) mu^2 G1(x^2) + sqrt(pi) (1 - mu^2) x G2(x^2) )
/// ```
/// with G1, G2 from [`MeijerSpec::first`] and [`MeijerSpec::second`].
pub fn p_meijer(mu: i32, x: f64, cfg: &MeijerConfig) -> Result<SumResult> {
    let order = OrderIndex::new(mu)?;
    if mu == 0 {
        return Err(Error::ZeroOrderExcluded);
    }
    let x = Argument::positive(x)?.get();
    if x > cfg.x_max {
        return Err(Error::ArgumentDomain {
            x,
            reason: "Meijer-G route is limited to x <= 30 (raise x_max explicitly)",
        });
    }
    let z = x * x;
    let g1 = meijer_g_3024(&MeijerSpec::first(mu, z, cfg))?;
    let g2 = meijer_g_3024(&MeijerSpec::second(mu, z, cfg))?;
    let [jm, ym, j0, y0] = jy_with_zero(order.abs(), x);
    let s = order.parity();
    let (jm, ym) = if mu < 0 { (s * jm, s * ym) } else { (jm, ym) };
    let m2 = f64::from(mu) * f64::from(mu);
    let rp = PI.sqrt();
    let inner = PI * (y0 * jm + j0 * ym) + rp * m2 * g1.re + rp * (1.0 - m2) * x * g2.re;
    let err = 0.25 * rp * (m2 * g1.err_estimate + (1.0 - m2).abs() * x * g2.err_estimate)
        + crate::closed_form::KERNEL_SLACK;
    Ok(SumResult {
        value: -0.25 * s * inner,
        terms_used: g1.nodes + g2.nodes,
        tail_bound: err,
        route: Route::Meijer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrand_is_conjugate_symmetric() {
        let spec = MeijerSpec::first(2, 4.0, &MeijerConfig::default());
        let s = Complex64::new(spec.contour_sigma, 1.3);
        let lhs = spec.integrand(s);
        let rhs = spec.integrand(s.conj()).conj();
        assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm());
    }

    #[test]
    fn denominator_pole_gives_zero() {
        // sigma = min b - 1 puts 1 - b4 + s on a pole of Gamma at t = 0
        let spec = MeijerSpec::first(1, 1.0, &MeijerConfig::default()).with_sigma(-1.5);
        assert_eq!(spec.integrand(Complex64::new(-1.5, 0.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn contour_checks() {
        let cfg = MeijerConfig::default();
        let spec = MeijerSpec::first(2, 4.0, &cfg).with_sigma(-1.01);
        assert!(matches!(meijer_g_3024(&spec), Err(Error::ContourTooClose { .. })));
        let spec = MeijerSpec::first(2, 4.0, &cfg).with_sigma(0.0);
        assert!(matches!(meijer_g_3024(&spec), Err(Error::ContourTooClose { .. })));
        let spec = MeijerSpec::first(2, 4.0, &cfg).with_height(2.0);
        assert!(matches!(meijer_g_3024(&spec), Err(Error::InsufficientDecay { .. })));
        let spec = MeijerSpec::first(2, 4.0, &cfg).with_nodes(4000);
        assert!(matches!(meijer_g_3024(&spec), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn result_is_real() {
        let cfg = MeijerConfig::default();
        for mu in [1, 2, 3] {
            for z in [0.25, 1.0, 25.0] {
                let g = meijer_g_3024(&MeijerSpec::second(mu, z, &cfg)).unwrap();
                assert!(g.im.abs() <= 1e-10 * g.re.abs().max(1e-300), "mu={mu} z={z}: {g:?}");
            }
        }
    }

    #[test]
    fn cap_and_zero_order() {
        let cfg = MeijerConfig::default();
        assert!(matches!(p_meijer(1, 31.0, &cfg), Err(Error::ArgumentDomain { .. })));
        assert_eq!(p_meijer(0, 1.0, &cfg), Err(Error::ZeroOrderExcluded));
    }
}

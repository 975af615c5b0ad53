//! Oscillatory Bessel-product integrals.
//!
//! `[x, T]` is covered by 15-point Kronrod panels: an irregular first stretch
//! of about one period, then half-period panels whose ends sit on the zeros of
//! the leading `cos(2t - psi)` envelope. The worst panel is bisected until the
//! summed estimate meets the tolerance. `[T, inf)` is integrated in closed
//! form from the Hankel expansions (see [`tail`]).

mod gauss_kronrod;
pub(crate) mod tail;

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};
use crate::special_fn::{j_two, jy_with_zero, Argument, OrderIndex};
use gauss_kronrod::{gk15, PanelEstimate};

/// How the part of an integral beyond the handover point was handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TailMethod {
    Asymptotic,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Handover to the analytic tail at `T = factor * max(x, 30)`, raised to
    /// `mu^2` for high orders so the Hankel products converge.
    pub split_point_factor: f64,
    pub max_panels: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            rel_tol: 1e-11,
            abs_tol: 1e-14,
            split_point_factor: 4.0,
            max_panels: 20_000,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidConfig("rel_tol and abs_tol must be > 0".into()));
        }
        if !(self.split_point_factor >= 1.0) || !self.split_point_factor.is_finite() {
            return Err(Error::InvalidConfig("split_point_factor must be >= 1".into()));
        }
        if self.max_panels == 0 {
            return Err(Error::InvalidConfig("max_panels must be >= 1".into()));
        }
        Ok(())
    }

    fn handover(&self, x: f64, order: usize) -> f64 {
        let t = self.split_point_factor * x.max(30.0);
        t.max((order * order) as f64).max(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub err_estimate: f64,
    pub panels_used: usize,
    pub tail_method: TailMethod,
}

/// First `t >= a` with `cos(2t - psi) = 0`.
fn first_zero(a: f64, psi: f64) -> f64 {
    let k = ((2.0 * a - psi - FRAC_PI_2) / PI).ceil();
    0.5 * (psi + FRAC_PI_2 + k * PI)
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    est: PanelEstimate,
}

struct ByErr(f64, usize);

impl PartialEq for ByErr {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for ByErr {}
impl PartialOrd for ByErr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByErr {
    fn cmp(&self, other: &Self) -> Ordering {
        // ties broken by index so the refinement order is reproducible
        self.0
            .total_cmp(&other.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

/// Globally adaptive Kronrod quadrature starting from the given breakpoints.
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    spec: &QuadSpec,
) -> Result<(f64, f64, usize)> {
    if breaks.len() - 1 > spec.max_panels {
        return Err(Error::Quadrature(format!(
            "max_panels = {} below the {} panels needed to reach the handover point",
            spec.max_panels,
            breaks.len() - 1
        )));
    }
    let mut panels: Vec<Panel> = breaks
        .windows(2)
        .map(|w| Panel {
            a: w[0],
            b: w[1],
            est: gk15(f, w[0], w[1]),
        })
        .collect();
    let mut heap: BinaryHeap<ByErr> = panels
        .iter()
        .enumerate()
        .map(|(i, p)| ByErr(p.est.err, i))
        .collect();
    let mut value: f64 = panels.iter().map(|p| p.est.value).sum();
    let mut err: f64 = panels.iter().map(|p| p.est.err).sum();
    while err > spec.abs_tol.max(spec.rel_tol * value.abs()) {
        let Some(ByErr(_, i)) = heap.pop() else { break };
        let Panel { a, b, est } = panels[i];
        let mid = 0.5 * (a + b);
        if !(mid > a && mid < b) || (b - a) < 1e-13 * a.abs().max(1.0) {
            // cannot be refined further; leave it with its estimate
            continue;
        }
        if panels.len() >= spec.max_panels {
            return Err(Error::Quadrature(format!(
                "max_panels = {} exceeded with error estimate {err:.3e}",
                spec.max_panels
            )));
        }
        let left = gk15(f, a, mid);
        let right = gk15(f, mid, b);
        value += left.value + right.value - est.value;
        err += left.err + right.err - est.err;
        panels[i] = Panel { a, b: mid, est: left };
        heap.push(ByErr(left.err, i));
        panels.push(Panel { a: mid, b, est: right });
        heap.push(ByErr(right.err, panels.len() - 1));
    }
    if !value.is_finite() {
        return Err(Error::Quadrature("non-finite integrand".into()));
    }
    // recompute the totals in a fixed order
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let total: NeumaierSum = panels.iter().map(|p| p.est.value).collect();
    let err: f64 = panels.iter().map(|p| p.est.err + p.est.roundoff).sum();
    Ok((total.value(), err, panels.len()))
}

/// Breakpoints on `[a, end]`: about one period of equal pieces, then
/// half-period panels aligned to the zeros of `cos(2t - psi)`. `end` must be
/// such a zero.
fn aligned_breaks(a: f64, end: f64, psi: f64) -> Vec<f64> {
    let z0 = first_zero(a + 2.0 * PI, psi).min(end);
    let lead = ((z0 - a) / FRAC_PI_2).ceil().max(1.0) as usize;
    let mut breaks: Vec<f64> = (0..lead)
        .map(|i| a + (z0 - a) * i as f64 / lead as f64)
        .collect();
    let periods = ((end - z0) / FRAC_PI_2).round() as usize;
    breaks.extend((0..=periods).map(|k| z0 + k as f64 * FRAC_PI_2));
    breaks
}

/// `int_x^inf g(t) dt` for an integrand whose leading oscillation is
/// `cos(2t - psi)`, with the analytic tail supplied by `tail(T)`.
fn semi_infinite<F, G>(g: F, x: f64, psi: f64, order: usize, tail: G, spec: &QuadSpec) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> (f64, f64),
{
    spec.validate()?;
    let t_end = first_zero(spec.handover(x, order), psi);
    let breaks = aligned_breaks(x, t_end, psi);
    let (body, body_err, panels) = adaptive(&g, &breaks, spec)?;
    let (tail_value, tail_err) = tail(t_end);
    let value = body + tail_value;
    let err_estimate = body_err + tail_err + f64::EPSILON * tail_value.abs();
    let tol = spec.abs_tol.max(spec.rel_tol * value.abs());
    if tail_err > tol {
        return Err(Error::Quadrature(format!(
            "analytic tail error {tail_err:.3e} above tolerance {tol:.3e} at T = {t_end}"
        )));
    }
    Ok(IntegralResult {
        value,
        err_estimate,
        panels_used: panels,
        tail_method: TailMethod::Asymptotic,
    })
}

/// `f_mu(t) = (pi/4)(Y_mu J_0 + J_mu Y_0)` without domain checks.
pub(crate) fn f_mu_raw(mu: i64, t: f64) -> f64 {
    let [jm, ym, j0, y0] = jy_with_zero(mu.unsigned_abs() as usize, t);
    let s = if mu < 0 && mu % 2 != 0 { -1.0 } else { 1.0 };
    FRAC_PI_4 * s * (ym * j0 + jm * y0)
}

fn fmu_moment(mu: i32, x: f64, k: usize, spec: &QuadSpec) -> Result<IntegralResult> {
    let order = OrderIndex::new(mu)?;
    if mu == 0 {
        return Err(Error::ZeroOrderExcluded);
    }
    let x = Argument::positive(x)?.get();
    let mu = i64::from(mu);
    let s = order.parity();
    // f_{-mu} = (-1)^mu f_mu, so integrate |mu| and restore the sign
    let m = mu.abs();
    let r = semi_infinite(
        |t| f_mu_raw(m, t) / t.powi(k as i32),
        x,
        m as f64 * FRAC_PI_2,
        m as usize,
        |t| tail::fmu_tail(m, k, t),
        spec,
    )?;
    if mu < 0 {
        Ok(IntegralResult { value: s * r.value, ..r })
    } else {
        Ok(r)
    }
}

/// `int_x^inf f_mu(t)/t dt`.
pub fn integrate_fmu_over_t(mu: i32, x: f64, spec: &QuadSpec) -> Result<IntegralResult> {
    fmu_moment(mu, x, 1, spec)
}

/// `int_x^inf f_mu(t)/t^2 dt`.
pub fn integrate_fmu_over_t2(mu: i32, x: f64, spec: &QuadSpec) -> Result<IntegralResult> {
    fmu_moment(mu, x, 2, spec)
}

fn lemma_orders(nu: i32, mu: i32) -> Result<(usize, usize, f64)> {
    if nu < 0 || mu < 0 {
        return Err(Error::InvalidConfig(
            "lemma-1 integrals need nu >= 0 and mu >= 0".into(),
        ));
    }
    let p = OrderIndex::new(nu + mu)?.abs();
    Ok((p, nu as usize, f64::from(2 * nu + mu)))
}

fn zero_integral() -> IntegralResult {
    IntegralResult {
        value: 0.0,
        err_estimate: 0.0,
        panels_used: 0,
        tail_method: TailMethod::None,
    }
}

/// `int_0^x (2 nu + mu)/t J_{nu+mu}(t) J_nu(t) dt`.
///
/// The integrand behaves like `t^{2nu+mu-1}` at the origin, so it is
/// continuous there and the Kronrod nodes never touch `t = 0`.
pub fn lemma1_integral_finite(nu: i32, mu: i32, x: f64, spec: &QuadSpec) -> Result<IntegralResult> {
    let (p, q, c) = lemma_orders(nu, mu)?;
    let x = Argument::positive(x)?.get();
    spec.validate()?;
    if c == 0.0 {
        return Ok(zero_integral());
    }
    let pieces = (x / FRAC_PI_2).ceil().max(1.0) as usize;
    let breaks: Vec<f64> = (0..=pieces).map(|i| x * i as f64 / pieces as f64).collect();
    let g = |t: f64| {
        let (jp, jq) = j_two(p, q, t);
        c * jp * jq / t
    };
    let (value, err, panels) = adaptive(&g, &breaks, spec)?;
    Ok(IntegralResult {
        value,
        err_estimate: err,
        panels_used: panels,
        tail_method: TailMethod::None,
    })
}

/// `int_x^inf (2 nu + mu)/t J_{nu+mu}(t) J_nu(t) dt`.
pub fn lemma1_integral_tail(nu: i32, mu: i32, x: f64, spec: &QuadSpec) -> Result<IntegralResult> {
    let (p, q, c) = lemma_orders(nu, mu)?;
    let x = Argument::positive(x)?.get();
    spec.validate()?;
    if c == 0.0 {
        return Ok(zero_integral());
    }
    let r = semi_infinite(
        |t| {
            let (jp, jq) = j_two(p, q, t);
            jp * jq / t
        },
        x,
        (p + q + 1) as f64 * FRAC_PI_2,
        p,
        |t| tail::bessel_product_tail(p as i64, q as i64, t),
        spec,
    )?;
    Ok(IntegralResult {
        value: c * r.value,
        err_estimate: c * r.err_estimate,
        ..r
    })
}

/// `(2/pi) sin(pi mu/2)/mu`, with its limit 1 at `mu = 0`.
pub fn lemma1_constant(mu: i32) -> f64 {
    if mu == 0 {
        return 1.0;
    }
    let s = match mu.rem_euclid(4) {
        1 => 1.0,
        3 => -1.0,
        _ => 0.0,
    };
    2.0 / PI * s / f64::from(mu)
}

//! Integer-order Bessel kernels and the per-argument table used by the sums.
//!
//! J comes from Miller backward recurrence normalised with
//! `J_0 + 2 sum J_2k = 1`. Y_0 and Y_1 come from their Neumann expansions in
//! J (x < 25) or from the Hankel expansion, then forward recurrence in n.
//! The order derivative uses the Neumann expansion
//!
//! `dJ_nu/dnu |_{nu=n} = (ln(x/2) - psi(n+1)) J_n - sum_{k>=1} (-1)^k (n+2k) J_{n+2k} / (k (n+k))`
//!
//! which, unlike the finite-sum form built on Y_n, stays well conditioned
//! past the turning point n ~ x.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use super::dd::Dd;
use super::gamma::{digamma_int_plus_one, rgamma, EULER_GAMMA};
use super::hankel::jy_large;
use crate::compensated::NeumaierSum;

pub(crate) const HANKEL_MIN_X: f64 = 25.0;

const RESCALE_ABOVE: f64 = 1e250;

fn sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Start index for the backward recurrence.
fn miller_start(x: f64, max_order: usize) -> usize {
    let base = (max_order as f64).max(x.ceil());
    let n = base + 20.0 + (12.0 * x.cbrt()).ceil();
    let n = n as usize;
    n + (n & 1)
}

/// `J_0(x) ..= J_N(x)` for some `N > max_order`. Entries near the top are only
/// accurate in an absolute sense (they are negligible).
pub(crate) fn j_sequence(x: f64, max_order: usize) -> Vec<f64> {
    if x == 0.0 {
        let mut v = vec![0.0; max_order + 1];
        v[0] = 1.0;
        return v;
    }
    let top = miller_start(x, max_order);
    let mut v = vec![0.0; top + 2];
    v[top] = 1.0;
    for k in (1..=top).rev() {
        let next = (2.0 * k as f64 / x) * v[k] - v[k + 1];
        v[k - 1] = next;
        if next.abs() > RESCALE_ABOVE {
            for e in &mut v[k - 1..=top] {
                *e /= RESCALE_ABOVE;
            }
        }
    }
    let mut norm = NeumaierSum::new();
    norm.add(v[0]);
    for k in (2..=top).step_by(2) {
        norm.add(2.0 * v[k]);
    }
    let norm = norm.value();
    v.truncate(top + 1);
    for e in &mut v {
        *e /= norm;
    }
    v
}

/// `(Y_0, Y_1)` given a Miller J sequence at the same argument.
fn y01(x: f64, j: &[f64]) -> (f64, f64) {
    if x >= HANKEL_MIN_X {
        return (jy_large(0, x).1, jy_large(1, x).1);
    }
    let log_term = (x / 2.0).ln();
    let mut s0 = NeumaierSum::new();
    s0.add((log_term + EULER_GAMMA) * j[0]);
    let mut k = 1;
    while 2 * k < j.len() {
        s0.add(-2.0 * sign(k as i64) * j[2 * k] / k as f64);
        k += 1;
    }
    let mut s1 = NeumaierSum::new();
    s1.add(-j[0] / x);
    s1.add((log_term - digamma_int_plus_one(1)) * j[1]);
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let kf = k as f64;
        s1.add(-sign(k as i64) * (1.0 + 2.0 * kf) * j[2 * k + 1] / (kf * (1.0 + kf)));
        k += 1;
    }
    (FRAC_2_PI * s0.value(), FRAC_2_PI * s1.value())
}

fn y_forward(x: f64, y0: f64, y1: f64, max_order: usize) -> Vec<f64> {
    let mut y = Vec::with_capacity(max_order + 1);
    y.push(y0);
    if max_order >= 1 {
        y.push(y1);
    }
    for n in 1..max_order {
        let next = (2.0 * n as f64 / x) * y[n] - y[n - 1];
        y.push(next);
    }
    y
}

/// Order derivative at non-negative integer order from a J sequence.
fn jhat_neumann(n: usize, x: f64, j: &[f64]) -> f64 {
    let mut s = NeumaierSum::new();
    s.add(((x / 2.0).ln() - digamma_int_plus_one(n)) * j[n]);
    let mut k = 1;
    while n + 2 * k < j.len() {
        let kf = k as f64;
        let nf = n as f64;
        s.add(-sign(k as i64) * (nf + 2.0 * kf) * j[n + 2 * k] / (kf * (nf + kf)));
        k += 1;
    }
    s.value()
}

/// `(J_n(x), Y_n(x))` for `n >= 0`, `x > 0`, no domain checks.
pub(crate) fn jy(n: usize, x: f64) -> (f64, f64) {
    if x >= HANKEL_MIN_X && (n as f64) <= 0.5 * x {
        let (j0, y0) = jy_large(0, x);
        if n == 0 {
            return (j0, y0);
        }
        let (j1, y1) = jy_large(1, x);
        let (mut jm, mut jc) = (j0, j1);
        let (mut ym, mut yc) = (y0, y1);
        for k in 1..n {
            let f = 2.0 * k as f64 / x;
            let jn = f * jc - jm;
            let yn = f * yc - ym;
            jm = jc;
            jc = jn;
            ym = yc;
            yc = yn;
        }
        return (jc, yc);
    }
    let j = j_sequence(x, n);
    let (y0, y1) = y01(x, &j);
    let y = y_forward(x, y0, y1, n);
    (j[n], y[n])
}

/// `(J_n, Y_n, J_0, Y_0)` at one argument, sharing the work between orders.
pub(crate) fn jy_with_zero(n: usize, x: f64) -> [f64; 4] {
    if x >= HANKEL_MIN_X && (n as f64) <= 0.5 * x {
        let (j0, y0) = jy_large(0, x);
        if n == 0 {
            return [j0, y0, j0, y0];
        }
        let (j1, y1) = jy_large(1, x);
        let (mut jm, mut jc) = (j0, j1);
        let (mut ym, mut yc) = (y0, y1);
        for k in 1..n {
            let f = 2.0 * k as f64 / x;
            let jn = f * jc - jm;
            let yn = f * yc - ym;
            jm = jc;
            jc = jn;
            ym = yc;
            yc = yn;
        }
        return [jc, yc, j0, y0];
    }
    let j = j_sequence(x, n);
    let (y0, y1) = y01(x, &j);
    let y = y_forward(x, y0, y1, n.max(1));
    [j[n], y[n], j[0], y0]
}

/// `(J_p, J_q)` for `0 <= q <= p`.
pub(crate) fn j_two(p: usize, q: usize, x: f64) -> (f64, f64) {
    if x >= HANKEL_MIN_X && (p as f64) <= 0.5 * x {
        let (j0, _) = jy_large(0, x);
        let (j1, _) = jy_large(1, x);
        let mut seq = [j0, j1];
        let mut jq = if q == 0 { j0 } else { j1 };
        if p == 0 {
            return (j0, j0);
        }
        for k in 1..p {
            let next = (2.0 * k as f64 / x) * seq[1] - seq[0];
            seq = [seq[1], next];
            if k + 1 == q {
                jq = next;
            }
        }
        return (seq[1], jq);
    }
    let j = j_sequence(x, p);
    (j[p], j[q])
}

pub(crate) fn j_int(n: i64, x: f64) -> f64 {
    let m = n.unsigned_abs() as usize;
    let v = if x >= HANKEL_MIN_X && (m as f64) <= 0.5 * x {
        jy(m, x).0
    } else {
        j_sequence(x, m)[m]
    };
    if n < 0 {
        sign(n) * v
    } else {
        v
    }
}

pub(crate) fn y_int(n: i64, x: f64) -> f64 {
    let m = n.unsigned_abs() as usize;
    let v = jy(m, x).1;
    if n < 0 {
        sign(n) * v
    } else {
        v
    }
}

pub(crate) fn jhat_int(n: i64, x: f64) -> f64 {
    if n == 0 {
        return FRAC_PI_2 * y_int(0, x);
    }
    let m = n.unsigned_abs() as usize;
    let j = j_sequence(x, m);
    let jh = jhat_neumann(m, x, &j);
    if n > 0 {
        jh
    } else {
        let (y0, y1) = y01(x, &j);
        let y = y_forward(x, y0, y1, m);
        sign(n) * (PI * y[m] - jh)
    }
}

/// Finite-sum representation
/// `Jhat_n = (pi/2) Y_n + (n!/2) sum_{k<n} (x/2)^{k-n} J_k / (k! (n-k))`.
/// Exact, but loses all accuracy once n exceeds x because Y_n grows while the
/// result decays; kept as an independent cross-check at moderate orders.
pub(crate) fn jhat_finite_sum(n: usize, x: f64) -> f64 {
    let j = j_sequence(x, n);
    let (y0, y1) = y01(x, &j);
    let y = y_forward(x, y0, y1, n.max(1));
    let mut s = NeumaierSum::new();
    s.add(FRAC_PI_2 * y[n]);
    // coefficient n!/(2 k!) (x/2)^{k-n}, built downward from k = n - 1
    let half_x = x / 2.0;
    let mut c = 0.5 * n as f64 / half_x;
    for k in (0..n).rev() {
        s.add(c * j[k] / (n - k) as f64);
        if k > 0 {
            c *= k as f64 / half_x;
        }
    }
    s.value()
}

/// Ascending series for real order, summed in double-double:
/// `J_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k r_k`, `r_{k+1} = -r_k (x/2)^2 / ((k+1)(k+nu+1))`.
pub(crate) fn j_real_series(nu: f64, x: f64) -> f64 {
    let half = x / 2.0;
    let lead = half.powf(nu) * rgamma(nu + 1.0);
    let q = -Dd::prod(half, half);
    let mut r = Dd::ONE;
    let mut s = Dd::ONE;
    let kmin = half as usize + 2;
    for k in 0..2000usize {
        let kp1 = (k + 1) as f64;
        let den = Dd::from_f64(kp1) * Dd::sum(kp1, nu);
        r = r * q / den;
        s = s + r;
        if k >= kmin && r.abs().hi < 1e-33 * s.abs().hi {
            break;
        }
    }
    lead * s.to_f64()
}

/// All the Bessel quantities needed by one evaluation of the sums at fixed x.
#[derive(Debug, Clone)]
pub struct BesselTable {
    x: f64,
    j: Vec<f64>,
    jhat: Vec<f64>,
    y: Vec<f64>,
}

impl BesselTable {
    /// Tabulates `J_n` and `Jhat_n` for `0 <= n <= max_order` and `Y_n` for
    /// `0 <= n <= y_order` (Y is only needed for negative-order derivatives).
    pub fn new(x: f64, max_order: usize, y_order: usize) -> Self {
        debug_assert!(x > 0.0);
        let j = j_sequence(x, max_order);
        let jhat: Vec<f64> = (0..=max_order).map(|n| jhat_neumann(n, x, &j)).collect();
        let (y0, y1) = y01(x, &j);
        let y = y_forward(x, y0, y1, y_order.max(1));
        let mut table = BesselTable { x, j, jhat, y };
        // keep Jhat_0 = (pi/2) Y_0 on the same code path as order_deriv_j
        table.jhat[0] = FRAC_PI_2 * table.y[0];
        table
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn max_order(&self) -> usize {
        self.jhat.len() - 1
    }

    pub fn y_order(&self) -> usize {
        self.y.len() - 1
    }

    pub fn j(&self, n: i64) -> f64 {
        let m = n.unsigned_abs() as usize;
        debug_assert!(m <= self.max_order());
        if n < 0 {
            sign(n) * self.j[m]
        } else {
            self.j[m]
        }
    }

    pub fn y(&self, n: i64) -> f64 {
        let m = n.unsigned_abs() as usize;
        if n < 0 {
            sign(n) * self.y[m]
        } else {
            self.y[m]
        }
    }

    /// Order derivative; negative orders via
    /// `Jhat_{-m} = (-1)^m (pi Y_m - Jhat_m)`.
    pub fn jhat(&self, n: i64) -> f64 {
        if n >= 0 {
            self.jhat[n as usize]
        } else {
            let m = n.unsigned_abs() as usize;
            sign(n) * (PI * self.y[m] - self.jhat[m])
        }
    }
}

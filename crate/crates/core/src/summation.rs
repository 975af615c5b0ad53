//! Truncated evaluation of the infinite Bessel sums.
//!
//! Every sum here has terms that are O(1) up to the turning point `n ~ x`
//! and decay super-exponentially past it, so truncation only has to wait
//! out the Airy zone of width ~ x^{1/3} and then watch the terms die.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};
use crate::special_fn::{bessel, Argument, BesselTable, OrderIndex, ARGUMENT_LIMIT};

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Series,
    Closed,
    Meijer,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Series, Route::Closed, Route::Meijer];

    pub fn name(self) -> &'static str {
        match self {
            Route::Series => "series",
            Route::Closed => "closed",
            Route::Meijer => "meijer",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "series" => Ok(Route::Series),
            "closed" => Ok(Route::Closed),
            "meijer" => Ok(Route::Meijer),
            other => Err(format!("unknown route '{other}'")),
        }
    }
}

/// Common result of every route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumResult {
    pub value: f64,
    /// Series terms, quadrature panels or contour nodes, depending on the route.
    pub terms_used: usize,
    /// Estimated absolute error.
    pub tail_bound: f64,
    pub route: Route,
}

/// When to stop summing.
///
/// Summation stops at the first `n >= n_min` after which `streak`
/// consecutive terms were all below `abs_floor * max(1, |running sum|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub abs_floor: f64,
    pub streak: usize,
    pub n_min: usize,
    pub n_max: usize,
}

impl TruncationPolicy {
    pub const DEFAULT_FLOOR: f64 = 1e-17;
    pub const DEFAULT_STREAK: usize = 4;
    pub const DEFAULT_N_MAX: usize = 10_000;

    /// Default policy: `n_min = ceil(x + 1.5 x^{1/3}) + |mu| + 10`.
    pub fn for_args(mu: i32, x: f64) -> Self {
        let x = if x.is_finite() { x.max(0.0) } else { 0.0 };
        let n_min = (x + 1.5 * x.cbrt()).ceil() as usize + mu.unsigned_abs() as usize + 10;
        TruncationPolicy {
            abs_floor: Self::DEFAULT_FLOOR,
            streak: Self::DEFAULT_STREAK,
            n_min,
            n_max: Self::DEFAULT_N_MAX.max(n_min),
        }
    }

    /// The same policy with a different floor.
    pub fn with_floor(mut self, abs_floor: f64) -> Self {
        self.abs_floor = abs_floor;
        self
    }

    pub fn validate(&self, mu: i32, x: f64) -> Result<()> {
        let required = x.ceil() as usize + mu.unsigned_abs() as usize + 10;
        if self.n_min < required {
            return Err(Error::InvalidConfig(format!(
                "n_min = {} is below ceil(x) + |mu| + 10 = {required}",
                self.n_min
            )));
        }
        if self.n_max < self.n_min {
            return Err(Error::InvalidConfig("n_max must be >= n_min".into()));
        }
        if !(self.abs_floor > 0.0) {
            return Err(Error::InvalidConfig("abs_floor must be > 0".into()));
        }
        if self.streak == 0 {
            return Err(Error::InvalidConfig("streak must be >= 1".into()));
        }
        Ok(())
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

/// Drives a term sequence `term(n)` for `n = first, first+1, ...` under a policy.
///
/// `term` returns `None` when the backing tables must grow; `grow` is then
/// called with the order that is needed.
struct Truncator<'a> {
    policy: &'a TruncationPolicy,
    sum: NeumaierSum,
    abs_sum: f64,
    quiet: usize,
    last: f64,
    terms: usize,
}

enum Step {
    Continue,
    Done,
}

impl<'a> Truncator<'a> {
    fn new(policy: &'a TruncationPolicy) -> Self {
        Truncator {
            policy,
            sum: NeumaierSum::new(),
            abs_sum: 0.0,
            quiet: 0,
            last: 0.0,
            terms: 0,
        }
    }

    fn push(&mut self, n: usize, term: f64) -> Result<Step> {
        self.sum.add(term);
        self.abs_sum += term.abs();
        self.terms += 1;
        self.last = term;
        if n >= self.policy.n_min {
            let floor = self.policy.abs_floor * self.sum.value().abs().max(1.0);
            if term.abs() < floor {
                self.quiet += 1;
                if self.quiet >= self.policy.streak {
                    return Ok(Step::Done);
                }
            } else {
                self.quiet = 0;
            }
        }
        if n >= self.policy.n_max {
            return Err(Error::NotConverged {
                value: self.sum.value(),
                tail_bound: self.tail_bound(),
                terms: self.terms,
            });
        }
        Ok(Step::Continue)
    }

    /// `streak * |last term|` for the truncated tail, plus the rounding
    /// error of the individual terms, a few ulps each.
    fn tail_bound(&self) -> f64 {
        self.last.abs() * self.policy.streak as f64 + 4.0 * f64::EPSILON * self.abs_sum
    }

    fn finish(&self, route: Route) -> SumResult {
        SumResult {
            value: self.sum.value(),
            terms_used: self.terms,
            tail_bound: self.tail_bound(),
            route,
        }
    }
}

fn initial_cap(policy: &TruncationPolicy, extra: usize) -> usize {
    (policy.n_min + extra + 32).min(policy.n_max + extra)
}

fn grown_cap(cap: usize, policy: &TruncationPolicy, extra: usize) -> usize {
    (2 * cap).min(policy.n_max + extra + 1)
}

/// The n-th term of `P_mu` from a table covering orders up to `n + |mu|`.
pub(crate) fn p_term(table: &BesselTable, mu: i64, n: i64) -> f64 {
    let s = if mu % 2 == 0 { 1.0 } else { -1.0 };
    let jn = table.j(n);
    let jhn = table.jhat(n);
    let lower = table.jhat(n - mu) * jn + table.j(n - mu) * jhn;
    let upper = table.jhat(n + mu) * jn + table.j(n + mu) * jhn;
    n as f64 * (lower + s * upper)
}

/// Direct summation of `P_mu(x)`. `mu = 0` is allowed here.
pub fn p_series(mu: i32, x: f64, policy: &TruncationPolicy) -> Result<SumResult> {
    let m = OrderIndex::new(mu)?.abs();
    let x = check_x(x)?;
    policy.validate(mu, x)?;
    let mut cap = initial_cap(policy, m);
    let mut table = BesselTable::new(x, cap, m);
    let mut acc = Truncator::new(policy);
    let mut n = 1usize;
    loop {
        if n + m > table.max_order() {
            cap = grown_cap(cap, policy, m);
            table = BesselTable::new(x, cap, m);
        }
        let term = p_term(&table, mu.into(), n as i64);
        if let Step::Done = acc.push(n, term)? {
            return Ok(acc.finish(Route::Series));
        }
        n += 1;
    }
}

fn j_signed(j: &[f64], n: i64) -> f64 {
    let v = j[n.unsigned_abs() as usize];
    if n < 0 && n % 2 != 0 {
        -v
    } else {
        v
    }
}

/// `sum_{n>=0} eps_n J_{nu+mu+n}(x) J_{nu+n}(x)` with `eps_0 = 1`, `eps_n = 2`.
pub fn lemma1_lhs(nu: i32, mu: i32, x: f64, policy: &TruncationPolicy) -> Result<SumResult> {
    if nu < 0 || mu < 0 {
        return Err(Error::InvalidConfig(
            "lemma-1 sum needs nu >= 0 and mu >= 0".into(),
        ));
    }
    let top = OrderIndex::new(nu + mu)?.abs();
    let x = check_x(x)?;
    policy.validate(nu + mu, x)?;
    let mut cap = initial_cap(policy, top);
    let mut j = bessel::j_sequence(x, cap);
    let mut acc = Truncator::new(policy);
    let mut n = 0usize;
    loop {
        if n + top > cap {
            cap = grown_cap(cap, policy, top);
            j = bessel::j_sequence(x, cap);
        }
        let weight = if n == 0 { 1.0 } else { 2.0 };
        let term = weight * j[top + n] * j[nu as usize + n];
        // n counts from 0 here; the policy's n_min refers to the same index
        if let Step::Done = acc.push(n, term)? {
            return Ok(acc.finish(Route::Series));
        }
        n += 1;
    }
}

/// `sum_{n>=1} (J_{n-mu} J_n + (-1)^mu J_{n+mu} J_n) + J_{-mu} J_0`, which
/// collapses to `delta_{mu,0}` by the addition theorem.
pub fn lemma2_sum(mu: i32, x: f64, policy: &TruncationPolicy) -> Result<SumResult> {
    let m = OrderIndex::new(mu)?.abs();
    let x = check_x(x)?;
    policy.validate(mu, x)?;
    let mu = i64::from(mu);
    let s = if mu % 2 == 0 { 1.0 } else { -1.0 };
    let mut cap = initial_cap(policy, m);
    let mut j = bessel::j_sequence(x, cap);
    let mut acc = Truncator::new(policy);
    let first = j_signed(&j, -mu) * j[0];
    acc.sum.add(first);
    acc.abs_sum += first.abs();
    let mut n = 1usize;
    loop {
        if n + m > cap {
            cap = grown_cap(cap, policy, m);
            j = bessel::j_sequence(x, cap);
        }
        let ni = n as i64;
        let term = j_signed(&j, ni - mu) * j[n] + s * j_signed(&j, ni + mu) * j[n];
        if let Step::Done = acc.push(n, term)? {
            return Ok(acc.finish(Route::Series));
        }
        n += 1;
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order {order} exceeds the supported limit |n| <= {limit}")]
    OrderLimit { order: i64, limit: i64 },

    #[error("argument x = {x} outside the supported domain: {reason}")]
    ArgumentDomain { x: f64, reason: &'static str },

    #[error("gamma function pole at z = {re} + {im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("mu = 0 is excluded: the closed form and the Meijer-G form only hold for mu != 0 (the delta term of the Graf sum does not vanish at mu = 0)")]
    ZeroOrderExcluded,

    #[error("series did not converge after {terms} terms (value {value}, tail bound {tail_bound})")]
    NotConverged {
        value: f64,
        tail_bound: f64,
        terms: usize,
    },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("contour vertex sigma = {sigma} is within {distance} of the pole at {pole}")]
    ContourTooClose { sigma: f64, pole: f64, distance: f64 },

    #[error("contour integrand has not decayed at the truncation height (|edge|/|peak| = {ratio:e})")]
    InsufficientDecay { ratio: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, HawkesError>;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HawkesError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A transform was evaluated at or beyond its divergence boundary.
    #[error("transform argument {arg} outside domain (boundary {boundary})")]
    Domain { arg: f64, boundary: f64 },

    #[error("claim law is heavy-tailed: no exponential moment at theta = {0}")]
    HeavyTail(f64),

    #[error("branching ratio E[H] = {0} is not below 1: the process is not stable (E[H] < 1 required)")]
    Stability(f64),

    #[error("no tangency of the fixed-point map inside the transform domain (steepness condition fails)")]
    Steepness,

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("cluster MGF iterate {value} exceeded the critical value {limit}: theta beyond critical")]
    Divergence { value: f64, limit: f64 },

    #[error("cluster simulation exceeded {0} events")]
    ExplosionGuard(usize),

    /// Premium rate outside the net-profit window `rho_min < rho < rho_max`.
    #[error("premium rho = {rho} outside the net-profit window ({rho_min}, {rho_max})")]
    Window { rho: f64, rho_min: f64, rho_max: f64 },

    #[error("net profit condition fails: rho = {rho} must exceed E[C] nu / (1 - E[H]) = {rho_min}")]
    NetProfit { rho: f64, rho_min: f64 },

    /// The CLT tail condition fails; `variance` is the formula value anyway.
    #[error("CLT tail condition t^(1/2) * int_t^inf E[h(s,a)] ds -> 0 fails (formula value {variance})")]
    CltCondition { variance: f64 },

    #[error("{0}")]
    Other(String),
}

impl HawkesError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        HawkesError::InvalidParameter(msg.into())
    }
}

//! Error type shared by all evaluation paths.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum QrmError {
    /// Argument outside the validated domain of a formula
    /// (e.g. `t` on the cut lines of the heat kernel, `g = 0` for the
    /// G-function recurrence, contour radius ≥ π).
    #[error("domain error: {0}")]
    Domain(String),

    /// A point where the formula is valid but numerically meaningless
    /// (propagator caustics `t ≈ kπ`, G-function pole proximity).
    #[error("ill-conditioned evaluation: {0}")]
    IllConditioned(String),

    /// A series or quadrature failed to reach the requested tolerance
    /// within its configured budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Invalid user-supplied argument (negative tolerance, bad grid, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Exact series arithmetic was asked for an order beyond its
    /// truncation; never silently truncated.
    #[error("truncation order insufficient: {0}")]
    Truncation(String),
}

pub type Result<T> = std::result::Result<T, QrmError>;

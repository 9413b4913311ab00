use thiserror::Error;

use crate::stationary::Branch;

/// Errors raised by the solvers and numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integrand is not finite at x = {at}")]
    NonFinite { at: f64 },

    #[error("adaptive refinement exceeded depth {max_depth} on [{a}, {b}]")]
    DepthExceeded { a: f64, b: f64, max_depth: usize },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("mass inversion is ill-posed at sigma = 2")]
    CriticalSigma,

    #[error("branch {branch} does not exist at omega = {omega} (threshold {threshold})")]
    BranchAbsent {
        branch: Branch,
        omega: f64,
        threshold: f64,
    },

    #[error("tanh variable {value} too close to +-1 for a finite translation")]
    NumericalOverflow { value: f64 },

    #[error("mass {mu} outside the range ({lo}, {hi}) attainable on branch {branch}")]
    MassOutOfRange {
        branch: Branch,
        mu: f64,
        lo: f64,
        hi: f64,
    },

    #[error("mass map is constant for sigma = 2 and alpha = 0")]
    DegenerateMap,

    #[error("no linear eigenvalue without a delta term (alpha = 0)")]
    NoEigenvalue,

    #[error("operation requires sigma = 2, got {0}")]
    WrongSigma(f64),

    #[error("constrained energy is unbounded below at mass {mu}")]
    Unbounded { mu: f64 },

    #[error("constrained infimum at mass {mu} is not attained")]
    NoMinimizer { mu: f64 },

    #[error("iteration did not converge after {iterations} steps")]
    NotConverged { iterations: usize },

    #[error("rearrangement requires a nonnegative function (sample {index} = {value})")]
    NegativeInput { index: usize, value: f64 },

    #[error("rearranged profile does not fit in the grid: {needed} samples for {available} slots")]
    InsufficientRoom { needed: usize, available: usize },

    #[error("quotient undefined for the zero function")]
    ZeroFunction,
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type shared across the crate.

use crate::solver::NoiseDesign;

/// Errors produced by construction, evaluation, and solving.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A probability vector violated the simplex invariants.
    #[error("invalid probability mass function: {0}")]
    InvalidPmf(String),

    /// A quantizer was constructed with invalid parameters.
    #[error("invalid quantizer: {0}")]
    InvalidQuantizer(String),

    /// A sensor model was constructed with invalid parameters, or its
    /// CDF turned out to be improper.
    #[error("invalid sensor model: {0}")]
    InvalidModel(String),

    /// An operation received a non-finite real where a finite one is required.
    #[error("expected a finite value, got {0}")]
    NonFinite(f64),

    /// Empirical estimation was asked to work on an empty sample set.
    #[error("sample set is empty")]
    EmptySamples,

    /// Two PMFs that must share a support (the quantization levels) do not.
    #[error("probability mass functions are defined on different supports")]
    SupportMismatch,

    /// The analytic gradient was requested at the simplex boundary,
    /// where it is unbounded.
    #[error("gradient undefined at the simplex boundary: p[{index}] = {value}")]
    GradientAtBoundary { index: usize, value: f64 },

    /// The distortion budget lies below the smallest achievable E[Z^2].
    /// Because the noise alphabet equals the quantization levels, the
    /// mean square distortion can never go below `min_distortion`.
    #[error(
        "distortion budget {epsilon} is infeasible: the minimum achievable \
         E[Z^2] on this level set is {min_distortion}"
    )]
    InfeasibleDistortion { epsilon: f64, min_distortion: f64 },

    /// The solver exhausted its iteration caps; the best iterate found
    /// so far is carried along.
    #[error("solver did not converge (best objective {} bits, kkt residual {})",
            best.mi_bits, best.kkt_residual)]
    NotConverged { best: Box<NoiseDesign> },

    /// Brute-force enumeration was requested on a problem too large for it.
    #[error("brute-force search supports at most {max} levels, got {n}")]
    TooManyLevels { n: usize, max: usize },

    /// An estimator has no entry for an observation it was applied to.
    #[error("estimator is not total: no entry for observation {0}")]
    PartialEstimator(f64),

    /// A caller-supplied argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

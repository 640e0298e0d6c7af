use thiserror::Error;

/// Why a density derivative could not be evaluated at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonDiffKind {
    /// One-sided first derivatives differ (Laplacian at the origin).
    Kink,
    /// One-sided second derivatives differ (corners of the hybrid plateau).
    CurvatureJump,
    /// The second derivative diverges to −∞ (GGD with 1 < β < 2 at the origin).
    InfiniteCurvature,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func}: argument out of domain ({msg})")]
    Domain { func: &'static str, msg: String },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{0}: result not representable as f64")]
    Overflow(&'static str),

    #[error("{func}: no convergence within {max_iter} iterations")]
    Convergence { func: &'static str, max_iter: usize },

    #[error("density not differentiable at v = {at} ({kind:?})")]
    NonDifferentiable { at: f64, kind: NonDiffKind },

    #[error("moment undefined: {0}")]
    UndefinedMoment(&'static str),

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {err:e})")]
    Quadrature { tol: f64, err: f64 },

    #[error("parse error at `{key}`: {msg}")]
    Parse { key: String, msg: String },

    #[error("empty input")]
    EmptyInput,

    #[error(
        "saturation policy triggered at epsilon = {epsilon}: {saturated} of {runs} runs saturated (limit {threshold})"
    )]
    SaturationExceeded {
        epsilon: f64,
        saturated: usize,
        runs: usize,
        threshold: f64,
    },

    #[error("insufficient runs: standard error of MSE/CRB is {std_error:.4}, must be below {limit}")]
    InsufficientRuns { std_error: f64, limit: f64 },
}

impl Error {
    pub(crate) fn parse(key: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            key: key.into(),
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

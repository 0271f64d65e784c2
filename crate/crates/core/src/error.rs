use thiserror::Error;

use crate::laplace::Edge;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DtmError {
    #[error("entry ({m},{n}) has degree {} above order {order}", m + n)]
    DegreeOverflow { m: usize, n: usize, order: usize },

    #[error("duplicate entry ({m},{n})")]
    DuplicateKey { m: usize, n: usize },

    #[error("cannot truncate order {order} spectrum to larger order {requested}")]
    TruncationOrder { order: usize, requested: usize },

    #[error("spectrum mismatch: order {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("spectrum mismatch: origin {left:?} vs {right:?}")]
    OriginMismatch { left: (f64, f64), right: (f64, f64) },

    #[error("derivative order {r}+{s} exceeds spectrum order {order}")]
    DerivativeOrder { r: usize, s: usize, order: usize },

    #[error("need at least {needed} Taylor coefficients, got {got}")]
    ShortCoefficients { needed: usize, got: usize },

    #[error("malformed seed: {0}")]
    MalformedSeed(String),

    #[error("closure edge {closure} is not opposite the marching origin ({expected} expected)")]
    NonOppositeEdge { closure: Edge, expected: Edge },

    #[error("closure condition inconsistent: residual {residual:.3e} ({detail})")]
    InconsistentClosure { residual: f64, detail: String },

    #[error("unsupported boundary pattern: {0}")]
    UnsupportedBoundary(String),

    #[error("the Laplace solver only expands at the origin, got {0:?}")]
    NonzeroOrigin((f64, f64)),

    #[error("invalid function descriptor: {0}")]
    InvalidFuncSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = DtmError> = std::result::Result<T, E>;

//! Error taxonomy shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Span Gram matrix condition number exceeds the 1e12 budget.
    #[error("ill-conditioned basis: gram condition {cond:e} exceeds 1e12")]
    IllConditionedBasis { cond: f64 },

    /// A field matrix violates the zero-last-row / finiteness contract.
    #[error("invalid affine field: {0}")]
    InvalidField(String),

    /// Conjugation matrix is singular or not of affine shape.
    #[error("singular transform: {0}")]
    SingularTransform(String),

    /// Translation columns do not have the template shape.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Parameter or point violates a family/surface domain constraint.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// Rejection sampling could not satisfy the constraints.
    #[error("sampling exhausted after {attempts} attempts: {what}")]
    SamplingExhausted { what: String, attempts: usize },

    /// Defining-function gradient too small for a Levi computation.
    #[error("degenerate gradient: |grad| = {norm:e}")]
    DegenerateGradient { norm: f64 },

    /// Levi signature is not (2,0,0) where strict pseudoconvexity is required.
    #[error("not strictly pseudoconvex: signature ({n_plus},{n_minus},{n_zero})")]
    NotSpc {
        n_plus: usize,
        n_minus: usize,
        n_zero: usize,
    },

    /// The u^2 coefficient survives the normalizing shear.
    #[error("residual u^2 coefficient {coeff:e} after shear")]
    ResidualUSquare { coeff: f64 },

    /// No fitting start reached the success threshold.
    #[error("fit failed: best residual {best:e} above threshold {threshold:e}")]
    FitFailed { best: f64, threshold: f64 },

    /// Gauss-Newton did not reach the residual target.
    #[error("no convergence after {iterations} iterations: residual {residual:e}")]
    NoConvergence { residual: f64, iterations: usize },

    /// Bad campaign configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Unknown catalog identifier.
    #[error("unknown id: {0}")]
    UnknownId(String),
}

pub type Result<V> = std::result::Result<V, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("polynomial has degree 0 in `{0}`")]
    ConstantInVariable(String),

    #[error("expected a univariate polynomial, found variables {0:?}")]
    NotUnivariate(Vec<String>),

    #[error("groebner resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("root iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("inexact division")]
    InexactDivision,

    #[error("solution set is positive-dimensional")]
    PositiveDimensional,
}

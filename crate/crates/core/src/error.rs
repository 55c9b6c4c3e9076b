use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("arity mismatch: polynomial over n={0} combined with n={1}")]
    ArityMismatch(usize, usize),
    #[error("unknown variable `{0}` for a metric with n={1}")]
    UnknownVariable(String, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("symbolic inversion unsupported for general fiber metric; use numeric-oracle")]
    GeneralFiberMetric,
    #[error("{0} depends on x")]
    DependsOnX(String),
    #[error("metric is not a Brinkmann wave (f depends on x)")]
    NotBrinkmann,
    #[error("phi is not closed: d(phi) has a nonzero (y{0}, y{1}) component")]
    PhiNotClosed(usize, usize),
    #[error("weak curvature endomorphism {0} violates the Bianchi identity")]
    BianchiViolation(usize),
    #[error("m-basis is not Killing-orthogonal: pair ({0}, {1})")]
    NonOrthogonalBasis(usize, usize),
    #[error("m-basis vectors {0} and {1} have different Killing norms")]
    UnequalNorms(usize, usize),
    #[error("basis is not closed under the Lie bracket: pair ({0}, {1})")]
    NotBracketClosed(usize, usize),
    #[error("unknown builtin example `{0}`")]
    UnknownExample(String),
    #[error("invalid index pair for contraction: ({0}, {1})")]
    InvalidIndexPair(usize, usize),
    #[error("numeric integration did not converge: {0}")]
    NonConvergence(String),
}

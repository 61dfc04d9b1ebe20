use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("total degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("linear system is inconsistent")]
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("bivector field is not linear with holomorphic coefficients")]
    NonLinear,
    #[error("invalid structure constants: {0}")]
    InvalidConstants(String),
    #[error("field kinds are incompatible: {0}")]
    KindMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PencilError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("pencil matrices must be square, skew and of equal size: {0}")]
    NotSkew(String),
    #[error("both pencil generators vanish")]
    ZeroPencil,
    #[error("anchor member {0} is not of maximal rank")]
    AnchorDegenerate(String),
    #[error("quotient basis construction failed: {0}")]
    QuotientBasis(String),
    #[error("Jordan blocks are present; the trivial Kronecker dimension is only defined for Jordan-free pencils")]
    JordanPresent,
    #[error("lambda = (0,0) is not a pencil direction")]
    ZeroLambda,
    #[error("internal inconsistency: {0}")]
    Checksum(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error("the algebra is abelian: the Lie-Poisson bivector vanishes")]
    Abelian,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl AnalysisError {
    /// True for failures that indicate a bug or a broken internal invariant
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            AnalysisError::Internal(_)
                | AnalysisError::Pencil(PencilError::Checksum(_))
                | AnalysisError::Pencil(PencilError::QuotientBasis(_))
        )
    }
}

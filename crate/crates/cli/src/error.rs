use bihamil_core::{AnalysisError, PencilError, PoissonError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 = input error, 3 = precondition violation, 4 = internal
    /// inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        let msg = e.to_string();
        if e.is_internal() {
            return CliError::Internal(msg);
        }
        match e {
            AnalysisError::Algebra(_) | AnalysisError::Poisson(_) => CliError::Input(msg),
            AnalysisError::Pencil(p) => p.into(),
            AnalysisError::Abelian | AnalysisError::Precondition(_) => CliError::Precondition(msg),
            AnalysisError::Internal(_) => CliError::Internal(msg),
        }
    }
}

impl From<PencilError> for CliError {
    fn from(e: PencilError) -> Self {
        let msg = e.to_string();
        match e {
            PencilError::Algebra(_) | PencilError::NotSkew(_) => CliError::Input(msg),
            PencilError::ZeroPencil | PencilError::ZeroLambda | PencilError::JordanPresent => {
                CliError::Precondition(msg)
            }
            PencilError::AnchorDegenerate(_) | PencilError::QuotientBasis(_) | PencilError::Checksum(_) => {
                CliError::Internal(msg)
            }
        }
    }
}

impl From<PoissonError> for CliError {
    fn from(e: PoissonError) -> Self {
        CliError::Input(e.to_string())
    }
}

use std::process::ExitCode;

use thiserror::Error;

use crate::inline::ParseError;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("numerical indeterminacy: {0}")]
    Indeterminate(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl LabError {
    pub fn input(msg: impl Into<String>) -> Self {
        Self::Input(msg.into())
    }

    /// 1 verification failure, 2 input error, 3 numerical indeterminacy.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Verification(_) => 1,
            Self::Indeterminate(_) => 3,
            _ => 2,
        }
    }

    pub fn to_exit_code(&self) -> ExitCode {
        ExitCode::from(self.exit_code())
    }
}

impl From<waring_core::Error> for LabError {
    fn from(e: waring_core::Error) -> Self {
        use waring_core::Error as E;
        match e {
            E::SvdNotConverged
            | E::EigenNotConverged
            | E::IndeterminateRoots { .. }
            | E::NoDistinctRootKernel { .. }
            | E::IllConditioned { .. }
            | E::AmbiguousClustering
            | E::InconclusiveKernelSearch { .. }
            | E::BitLengthExceeded { .. } => Self::Indeterminate(explain_indeterminacy(&e)),
            other => Self::Input(other.to_string()),
        }
    }
}

fn explain_indeterminacy(e: &waring_core::Error) -> String {
    use waring_core::Error as E;
    let hint = match e {
        E::IndeterminateRoots { .. } | E::AmbiguousClustering => {
            "roots of the kernel polynomial sit at the root tolerance; try a different --root-tol"
        }
        E::NoDistinctRootKernel { .. } => "no kernel element was certified square-free; try another --seed",
        E::IllConditioned { .. } => "the weight system is too ill-conditioned to meet the residual tolerance",
        E::InconclusiveKernelSearch { .. } | E::BitLengthExceeded { .. } => "the exact oracle could not decide",
        _ => "an iterative decomposition failed to converge",
    };
    format!("{e} ({hint})")
}

pub type LabResult<T> = Result<T, LabError>;

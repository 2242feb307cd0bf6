use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },

    #[error("register of {qubits} qubits exceeds the cap of {cap}")]
    TooManyQubits { qubits: usize, cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not a density matrix: {0}")]
    NotDensity(String),

    #[error("PSD violation: minimum eigenvalue {min_eigenvalue:e}")]
    PsdViolation { min_eigenvalue: f64 },

    #[error("eigendecomposition failed, residual {residual:e}")]
    Decomposition { residual: f64 },

    #[error("non-finite entry after step {step}")]
    NonFinite { step: usize },

    #[error("basis is not orthonormal, Gram deviation {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("lambda={lambda}: {got} generators survive orthonormalization, formula gives {expected}")]
    CountMismatch { lambda: i8, got: usize, expected: usize },

    #[error("gate has eigenvalue {0}, expected +1 or -1")]
    UnexpectedEigenvalue(f64),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid { field, reason: reason.into() }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        !matches!(
            self,
            Error::Invalid { .. }
                | Error::TooManyQubits { .. }
                | Error::DimensionMismatch(_)
                | Error::Unsupported(_)
        )
    }
}

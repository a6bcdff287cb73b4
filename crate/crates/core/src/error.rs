use thiserror::Error;

/// Errors raised by the morphism algebra, the models and the channel layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("model mismatch: {left} vs {right}")]
    ModelMismatch { left: String, right: String },

    #[error("unsupported in model {model}: {what}")]
    UnsupportedInModel { model: String, what: String },

    #[error("{name} expects {expected} object argument(s), got {got}")]
    ArityError {
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("typing error: {0}")]
    TypingError(String),

    #[error("domain/codomain mismatch: {0}")]
    DomCodMismatch(String),

    #[error("finiteness space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("payload too large: {0} entries")]
    TooLarge(usize),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("unknown model: {0}")]
    UnknownModel(String),

    #[error("unknown law: {0}")]
    UnknownLaw(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn unsupported(model: impl Into<String>, what: impl Into<String>) -> Self {
        Error::UnsupportedInModel {
            model: model.into(),
            what: what.into(),
        }
    }
}

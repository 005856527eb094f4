use thiserror::Error;

/// Errors shared across the laboratory modules.
///
/// `CapExceeded` is kept separate from plain validation failures so the CLI
/// can map the two onto distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("homomorphism failure: perm({g})∘perm({h}) ≠ perm({g}·{h}) at atom {atom}")]
    HomomorphismFailure { g: String, h: String, atom: String },

    #[error("not measure preserving: {g} sends atom {atom} to an atom of different weight")]
    NotMeasurePreserving { g: String, atom: String },

    #[error("trace not faithful: minimal central projection #{index} has trace {weight:.3e}")]
    FaithfulnessFailure { index: usize, weight: f64 },

    #[error("element lies outside the algebra span (relative residual {residual:.3e})")]
    NotInAlgebra { residual: f64 },

    #[error("numerical degeneracy: {0}")]
    Degenerate(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn cap(msg: impl Into<String>) -> Self {
        Error::CapExceeded(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

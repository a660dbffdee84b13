use thiserror::Error;

/// Errors surfaced by ring construction, parsing, and operator builds.
///
/// Convergence failures of iterative solvers are deliberately *not* errors:
/// they come back inside a report with `converged = false`.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A ring or pairing could not be constructed from its description.
    #[error("construction failed: {0}")]
    Construction(String),

    /// The requested instance exceeds the supported table scale.
    #[error("out of supported scale: {0}")]
    Scale(String),

    /// Ring-spec text failed to parse; `position` is a byte offset.
    #[error("parse error at byte {position}: expected {expected}, found {found}")]
    Parse {
        position: usize,
        expected: String,
        found: String,
    },

    /// Ring-spec text parsed but is not meaningful (e.g. `gf(6)`).
    #[error("invalid ring spec: {0}")]
    Semantic(String),
}

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }

    pub fn scale(msg: impl Into<String>) -> Self {
        Error::Scale(msg.into())
    }

    pub fn semantic(msg: impl Into<String>) -> Self {
        Error::Semantic(msg.into())
    }
}

use thiserror::Error;

/// Errors surfaced by the engine.
///
/// `CutoffInsufficient` is special: it means the requested invariant could
/// not be certified at the degree cutoff in force, never that the input was
/// malformed. Callers that drive whole suites retry once with a doubled
/// cutoff before giving up; the command-line front end maps it to exit
/// code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),

    #[error("invalid algebra map: {0}")]
    InvalidMap(String),

    #[error("inhomogeneous relation at index {index}: {detail}")]
    InhomogeneousRelation { index: usize, detail: String },

    #[error("cutoff {cutoff} insufficient: {detail}")]
    CutoffInsufficient { cutoff: u32, detail: String },

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_cutoff(&self) -> bool {
        matches!(self, Error::CutoffInsufficient { .. })
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A carrier descriptor would enumerate more values than the configured cap.
    #[error("carrier too large: {desc} has {size} values (cap {cap})")]
    CarrierTooLarge { desc: String, size: String, cap: usize },

    /// An operation produced a structure exceeding a global bound.
    #[error("carrier overflow: {bound} exceeded ({actual} > {cap})")]
    CarrierOverflow {
        bound: &'static str,
        actual: usize,
        cap: usize,
    },

    /// A value does not have the shape an operation expects.
    #[error("shape mismatch: expected {expected}, found `{found}`")]
    Shape { expected: String, found: String },

    /// Mismatched domains, carriers, levels and other caller bugs.
    #[error("usage error: {0}")]
    Usage(String),

    /// Malformed value text.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Invalid system, SDP or suite configuration.
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn shape(expected: impl Into<String>, found: &crate::Value) -> Self {
        Error::Shape {
            expected: expected.into(),
            found: found.to_string(),
        }
    }
}

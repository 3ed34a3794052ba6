use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid body descriptor `{0}`: {1}")]
    Descriptor(String, String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{op} supports dimension at most {cap}, got {got}")]
    DimensionCap {
        op: &'static str,
        cap: usize,
        got: usize,
    },
    #[error("body `{0}` is not convex; {1}")]
    NotConvex(String, &'static str),
    #[error("body `{0}` is not origin-symmetric; {1}")]
    NotSymmetric(String, &'static str),
    #[error("singular linear map (|det| = {0:.3e})")]
    SingularMap(f64),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("ellipsoid certification failed: {0}")]
    Certification(String),
    #[error("density violates normalization: {0}")]
    Normalization(String),
    #[error("unsupported body class for {op}: {tag}")]
    Unsupported { op: &'static str, tag: String },
    #[error("bad configuration field `{field}`: {reason}")]
    Config { field: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("report serialization failed: {0}")]
    Serialize(String),
}

pub type Result<T> = std::result::Result<T, Error>;

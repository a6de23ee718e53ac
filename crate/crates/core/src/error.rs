use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series `{label}` contains a non-finite value at index {index}")]
    NonFinite { label: String, index: usize },
    #[error("series `{label}` has {len} observations, at least 2 are required")]
    DegenerateSeries { label: String, len: usize },
    #[error("series label must not be empty")]
    EmptyLabel,
    #[error("warp factor must be finite and >= 1, got {0}")]
    InvalidWarp(f64),
    #[error("delayed window of length {window} at offset {delay} exceeds series length {len}")]
    DelayOutOfRange { window: usize, delay: usize, len: usize },
    #[error("series `{0}` is constant")]
    ConstantSeries(String),
    #[error("scale factor must be non-zero and finite")]
    InvalidScale,
    #[error("division by zero at index {index} of series `{label}`")]
    DivisionByZero { label: String, index: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("series lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("series of length {len} too short, need at least {needed}")]
    SeriesTooShort { len: usize, needed: usize },
    #[error("series has zero spectral power")]
    ZeroPower,
    #[error("compression failed: {0}")]
    CompressionError(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),
    #[error("unknown linkage `{0}`")]
    UnknownLinkage(String),
    #[error("measure `{measure}` produced a non-finite value")]
    NonFiniteDistance { measure: &'static str },
    #[error("ratio denominator is zero")]
    DegenerateRatio,
    #[error("at least 2 series are required for clustering, got {0}")]
    TooFewSeries(usize),
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("k = {k} outside 1..={n}")]
    InvalidK { k: usize, n: usize },
    #[error("label `{0}` not found")]
    LabelNotFound(String),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("grid is empty")]
    EmptyGrid,
    #[error("newick parse error at byte {pos}: {msg}")]
    Newick { pos: usize, msg: String },
}

impl Error {
    /// True for failures caused by the numbers rather than by malformed input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::ConstantSeries(_)
                | Error::DivisionByZero { .. }
                | Error::ZeroPower
                | Error::NonFiniteDistance { .. }
                | Error::DegenerateRatio
        )
    }
}

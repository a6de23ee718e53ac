use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] tsclust::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {msg}")]
    Csv { path: String, msg: String },
    #[error("missing value for `{label}` at period {period}")]
    MissingValue { label: String, period: String },
    #[error("periods of `{label}` are not contiguous: {before} is followed by {after}")]
    NonContiguousPeriods { label: String, before: String, after: String },
    #[error("unrecognised period label `{0}` (expected YYYYQn, YYYY-MM or an integer)")]
    BadPeriod(String),
    #[error("corpus mixes period formats")]
    MixedFrequency,
    #[error("config: {0}")]
    Config(String),
    #[error("regime `{0}` is not applicable to percentage-valued corpora")]
    RegimeNotApplicable(String),
}

impl CliError {
    /// 3 for numeric degeneracies, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numeric() => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

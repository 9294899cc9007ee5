use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree must be positive")]
    InvalidDegree,
    #[error("negative first difference at index {index}")]
    NegativeDifference { index: usize },
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("ambient variable counts differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("variable index {index} out of range for {ambient} variables")]
    IndexOutOfRange { index: usize, ambient: usize },
    #[error("generators have different degrees, algebra would not be level")]
    MixedDegrees,
    #[error("generators have different degrees ({0} vs {1})")]
    DegreeMismatch(u32, u32),
    #[error("malformed sequence: {0}")]
    MalformedSequence(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(u32),
    #[error("table too short: degree {0} is needed")]
    InsufficientTable(usize),
    #[error("alpha must be at least 1")]
    AlphaOutOfRange,
    #[error("f-vector is not Cohen-Macaulay: {0}")]
    NotCM(String),
    #[error("ideal is not Artinian: variable {0} has no pure power")]
    NotArtinian(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("jets belong to different rings")]
    RingMismatch,
    #[error("{what} = {value} is out of range [{min}, {max}]")]
    Range {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unknown jet variable {0:?}")]
    UnknownVariable(String),
    #[error("invalid alkane: {0}")]
    InvalidAlkane(String),
    #[error("invalid mark: {0}")]
    InvalidMark(String),
    #[error("tau must lie in the upper half-plane (Im tau = {0})")]
    Domain(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("frame has rank < 2")]
    DegenerateFrame,
    #[error("Pluecker coordinate y_{{{0},{1}}} vanishes; the cone map is undefined there")]
    ConeChart(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension formula violated: {0}")]
    FormulaViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

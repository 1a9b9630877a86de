use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("points {0}, {1} and {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("index {index} is out of range for a set of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("triangle has a repeated vertex index {0}")]
    RepeatedVertex(usize),
    #[error("operation needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("coloring has {got} entries but the point set has {expected} points")]
    SizeMismatch { expected: usize, got: usize },
    #[error("color {color} at index {index} is outside 1..={colors}")]
    ColorOutOfRange { index: usize, color: u32, colors: u32 },
    #[error("cannot give {n} points {c} non-empty color classes")]
    TooFewPointsForColors { n: usize, c: u32 },
    #[error("x-coordinates are not strictly increasing at index {0}")]
    NotXSorted(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed model: {0}")]
    MalformedModel(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

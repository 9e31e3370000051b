use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported surface S_{{{genus},{punctures}}}")]
    UnsupportedSurface { genus: u32, punctures: u32 },
    #[error("could not parse surface name {0:?} (expected \"g,n\")")]
    SurfaceName(String),
    #[error("subsurfaces live on different ambient surfaces")]
    AmbientMismatch,
    #[error("empty window")]
    EmptyWindow,
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("invalid slope {0}/{1}")]
    InvalidSlope(i64, i64),
    #[error("could not parse slope {0:?}")]
    SlopeSyntax(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("projection is empty")]
    EmptyProjection,
    #[error("pairs of pants are not projection targets")]
    PantsTarget,
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("subsurfaces do not interlock")]
    NotInterlocking,
    #[error("threshold {k} is not above the minimal threshold {min}")]
    ThresholdTooSmall { k: i64, min: i64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("baseline missing: {0}")]
    MissingBaseline(String),
    #[error("unknown regression check {0:?}")]
    UnknownCheck(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

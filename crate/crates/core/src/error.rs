use thiserror::Error;

use crate::algebra::Marker;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter index must be at least 1")]
    ZeroLetter,
    #[error("marker powers attach only to letters, not to the empty word")]
    PrefixOnUnit,
    #[error("input already carries marker `{0}`")]
    MarkerInInput(Marker),
    #[error("expected a plain word without marker powers")]
    NotPlain,
    #[error("word uses a marker other than `t`")]
    ForeignMarker,
    #[error("composition must be non-empty")]
    EmptyComposition,
    #[error("index is not admissible (leading entry must be at least 2)")]
    Inadmissible,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

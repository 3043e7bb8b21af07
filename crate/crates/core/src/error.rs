use thiserror::Error;

use crate::words::Word;

/// Errors raised by the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet 1..={d}")]
    InvalidLetter { letter: u32, d: usize },

    #[error("alphabet mismatch: expected d = {expected}, found d = {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    #[error("word {word} has length {len} but moments are stored only up to length {max_len}")]
    OutOfRange { word: Word, len: usize, max_len: usize },

    #[error("truncation needs depth {needed} but only {available} is available")]
    DepthExceeded { needed: usize, available: usize },

    #[error("moment table has no entry for word {0}")]
    MissingMoment(Word),

    #[error("row norm {norm} exceeds 1")]
    RowNormExceeded { norm: f64 },

    #[error("matrix point is not a strict row contraction (row norm {norm})")]
    NotStrict { norm: f64 },

    #[error("measure is not dominated: minimal eigenvalue of the difference is {min_eig}")]
    NotDominated { min_eig: f64 },

    #[error("Gram matrix vanishes; the measure is degenerate")]
    DegenerateMeasure,

    #[error("constant term {value} is not invertible")]
    NonInvertibleConstantTerm { value: f64 },

    #[error("constant term of modulus {modulus} is not strictly inside the unit disk")]
    SchurConstantTermTooLarge { modulus: f64 },

    #[error("measure is not positive: {0}")]
    NotPositive(String),

    #[error("quad component {0} has no closed-form type tag")]
    UnknownParts(usize),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("word {0} lies outside the truncation window")]
    OutsideWindow(Word),
    #[error("empty linear combination")]
    EmptyCombination,
    #[error("constant term {0} is not invertible")]
    NotInvertible(String),
    #[error("substituted series has nonzero constant term")]
    NonzeroConstantTerm,
    #[error("input windows certify no output coefficients")]
    EmptyCertifiedWindow,
    #[error("implicit equation violates a precondition: {0}")]
    ImplicitPrecondition(String),
    #[error("fixed-point check failed at {0}")]
    FixedPointCheck(Word),
    #[error("series is not plethystically invertible: {0}")]
    NotPlethysticallyInvertible(String),
    #[error("order of a constant series is undefined")]
    ConstantSeries,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("result of K-duality is not a language: coefficient {coeff} at {word}")]
    NotALanguage { word: Word, coeff: String },
    #[error("requested bounds exceed the certified region: {0}")]
    BoundsExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("enumeration limit exceeded: {0}")]
    EnumerationLimit(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

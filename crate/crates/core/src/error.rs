use thiserror::Error;

use crate::automata::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("inconsistent shape: {0}")]
    Shape(String),
    #[error("entry `{0}` is not an integer")]
    NotInteger(String),
    #[error("word of length {len} exceeds the bound {bound}")]
    LengthExceeded { len: usize, bound: usize },
    #[error("interpolation system for letter `{letter}` has no solution at degree {degree}")]
    NotDClosed { letter: String, degree: usize },
    #[error("hypothesis agrees with the teacher on every prefix of `{0}`")]
    NoIncorrectPrefix(Word),
    #[error("certified hypothesis still has a non-integer value at `{0}`")]
    TargetNotInteger(Word),
    #[error("query budget of {0} exhausted")]
    QueryBudgetExceeded(u64),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

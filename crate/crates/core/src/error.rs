use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Appending `1` after a representation that already ends in `1`.
    #[error("cannot append 1 to {0}: its representation ends in 1")]
    InvalidAppend(i64),

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },

    /// Every point of the source interval has least significant digit 1.
    #[error("digit 1 cannot follow any point of {0}")]
    IllegalDigit(String),

    #[error("partition is not consistent: {0}")]
    Inconsistent(String),

    #[error("intervals do not tile the circle: {0}")]
    NotATiling(String),

    #[error("interval endpoints coincide at {0}phi")]
    DegenerateInterval(i64),

    #[error("duplicate endpoint {0}phi")]
    DuplicateEndpoint(i64),

    /// The input word left the automaton's domain.
    #[error("undefined: no transition on digit {digit} at position {position}")]
    Undefined { position: usize, digit: u8 },

    #[error("invalid digit {0}, expected 0 or 1")]
    InvalidDigit(u8),

    #[error("automata read in different orders")]
    OrderMismatch,

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("class count still changing at horizon {0}")]
    NotStabilized(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A character that is not part of the declared alphabet.
    #[error("symbol {symbol:?} is not in the alphabet {alphabet:?}")]
    UnknownSymbol { symbol: char, alphabet: String },

    /// A symbol index outside `0..alphabet_size`.
    #[error("symbol index {index} is outside an alphabet of {size} symbols")]
    SymbolOutOfRange { index: usize, size: usize },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("string uses {needed} distinct symbols but the target alphabet holds {available}")]
    Capacity { needed: usize, available: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid automaton: {0}")]
    InvalidDfa(String),

    #[error("pattern syntax error at offset {offset}: {message}")]
    PatternSyntax { offset: usize, message: String },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("cannot generate strings for pattern `{pattern}`: {reason}")]
    Generation { pattern: String, reason: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    /// True for errors caused by malformed input data (as opposed to bad
    /// arguments or runtime failures).
    pub fn is_input_format(&self) -> bool {
        matches!(
            self,
            Error::UnknownSymbol { .. }
                | Error::SymbolOutOfRange { .. }
                | Error::PatternSyntax { .. }
                | Error::Format { .. }
                | Error::Json(_)
                | Error::Generation { .. }
        )
    }
}

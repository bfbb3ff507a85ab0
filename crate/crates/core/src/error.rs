use thiserror::Error;

/// Errors raised by any operation of the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid symbol name `{0}`")]
    InvalidSymbol(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("{what} has more than {cap} elements")]
    MonoidTooLarge { what: &'static str, cap: usize },

    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("subset is not closed under product")]
    NotASubsemigroup,

    #[error("word is not in the image of the block encoding: {0}")]
    NotInImage(String),

    #[error("no language named `{0}`")]
    NameNotFound(String),

    #[error("language is not recognized by the morphism")]
    NotRecognized,

    #[error("morphism is not surjective: element {0} has no preimage")]
    NotSurjective(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

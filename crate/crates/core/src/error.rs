use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse fraction {0:?}")]
    ParseFraction(String),

    #[error("cannot parse word {0:?}: only '0' and '1' are allowed")]
    ParseWord(String),

    #[error("word of length {0} exceeds the {cap}-symbol cap", cap = crate::word::MAX_LEN)]
    WordTooLong(usize),

    #[error("pair ({u}, {v}) is not a same-slope Sturmian pair: prefix sums span more than one step")]
    InvalidPair { u: String, v: String },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// A halving step met an odd value. The formulas are integral by theorem,
    /// so this only happens on a transcription bug.
    #[error("integrality violated in {what}: {value} is odd")]
    Integrality { what: &'static str, value: i128 },

    #[error("closed-form evaluations disagree at n = {n}: expansion {expansion}, assembly {assembly}")]
    AssemblyMismatch { n: u64, expansion: u64, assembly: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {code} declared as both constant and parameter")]
    OverlappingAlphabets { code: u32 },

    #[error("symbol code {code} exceeds the supported code space (max {max})")]
    CodeTooLarge { code: u32, max: u32 },

    #[error("symbol {code} at offset {offset} is not in the declared alphabet")]
    UnknownSymbol { code: u32, offset: usize },

    #[error("p-strings are defined over different alphabet partitions")]
    PartitionMismatch,

    #[error("period {period} out of range for a string of length {len}")]
    PeriodOutOfRange { period: usize, len: usize },

    #[error("operation requires a non-empty string")]
    EmptyString,

    #[error("pattern must not be empty")]
    EmptyPattern,

    #[error("pattern contains no parameter symbols")]
    NoParameters,

    #[error("witness does not certify period {period}")]
    InvalidWitness { period: usize },

    #[error("mapping is not a permutation of 0..{len}")]
    NotAPermutation { len: usize },
}

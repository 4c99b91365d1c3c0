//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("text must contain at least one symbol")]
    EmptyText,
    #[error("pattern must contain at least one symbol")]
    EmptyPattern,
    #[error("pattern length {len} exceeds build parameter b = {max}")]
    PatternTooLong { len: usize, max: usize },
    #[error("build parameter b must be at least 1")]
    InvalidMaxLength,
    #[error("text length {n} exceeds the supported maximum")]
    TextTooLong { n: usize },
    #[error("hash capacity exceeded: n^3 * (sigma + 3) must stay below {modulus} (n = {n}, sigma = {sigma})")]
    Capacity {
        n: usize,
        sigma: usize,
        modulus: u64,
    },
    #[error("no injective hash seed found after {attempts} attempts")]
    SeedExhausted { attempts: u32 },
    #[error("duplicate string in the key family")]
    DuplicateKey,
    #[error("edit {edit} is out of range for a pattern of length {m}")]
    EditOutOfRange { edit: String, m: usize },
    #[error("prefix length {j} is out of range for a string of length {len}")]
    PrefixOutOfRange { j: usize, len: usize },
    #[error("invalid range [{lo}, {hi}] over {len} members")]
    RangeOutOfBounds { lo: usize, hi: usize, len: usize },
    #[error("the index was built without the centroid engine")]
    EngineUnavailable,
    #[error("corrupt index: {0}")]
    Corrupt(String),
}

pub type Result<T> = std::result::Result<T, Error>;

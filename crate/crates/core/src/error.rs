use std::io;

use thiserror::Error;

/// Errors raised while building texts, RLBWTs and indexes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("sentinel byte 0x00 occurs at offset {0}, before the end of the input")]
    SentinelMisplaced(usize),
    #[error("text length exceeds the supported maximum")]
    TooLong,
    #[error("position {pos} is outside [0..{n}]")]
    OutOfRange { pos: usize, n: usize },
    #[error("symbol {0} is not in the alphabet")]
    UnknownSymbol(u32),
    #[error("malformed RLBWT: {0}")]
    InvalidRlbwt(String),
    #[error("no SA sample for row {0}; net-occurrence rows must lie on run boundaries")]
    MissingBoundarySample(usize),
    #[error("traversal aborted by visitor")]
    VisitorAbort,
    #[error("net occurrences were not stored in this index")]
    NoccNotStored,
    #[error("bad magic bytes: expected \"{}\"", .expected.escape_ascii())]
    BadMagic { expected: &'static [u8] },
    #[error("unsupported format version {found} (expected {expected})")]
    VersionMismatch { found: u64, expected: u64 },
    #[error("input truncated")]
    Truncated,
    #[error("corrupt index: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use std::io;

use thiserror::Error;

use crate::moves::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("sentinel symbol '$' found at position {0}, but it may only end the text")]
    EmbeddedSentinel(usize),
    #[error("alphabet has {0} distinct symbols, at most 256 are supported")]
    AlphabetTooLarge(usize),
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("minimum match length must be at least 1")]
    InvalidMinLength,
    #[error("balancing parameter must be at least 2, got {0}")]
    InvalidBalance(usize),
    #[error("invalid interval sequence: {0}")]
    InvalidIntervals(Violation),
    #[error("payload has {found} values but the sequence has {expected} intervals")]
    PayloadLength { expected: usize, found: usize },
    #[error("move structure carries no payload")]
    NoPayload,
    #[error("position {pos} is outside [1, {n}]")]
    OutOfRange { pos: usize, n: usize },
    #[error("index construction check failed: {0}")]
    Construction(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error(transparent)]
    Format(#[from] FormatError),
}

/// Failures while reading or writing the on-disk index format.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("unsupported index format version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },
    #[error("index file is truncated")]
    Truncated,
    #[error("checksum mismatch (stored {stored:08x}, computed {computed:08x})")]
    Checksum { stored: u32, computed: u32 },
    #[error("malformed index: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

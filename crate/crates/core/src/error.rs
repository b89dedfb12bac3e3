//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence length {0} outside supported range {1}..={2}")]
    SequenceLength(usize, usize, usize),

    #[error("unknown residue code '{0}'")]
    UnknownResidue(char),

    #[error("bitstring has {got} bits, expected {expected}")]
    BitstringLength { got: usize, expected: usize },

    #[error("bitstring contains '{0}', expected only '0'/'1'")]
    BadBitChar(char),

    #[error("turn sequence invalid: {0}")]
    BadTurns(String),

    #[error("bead index {0} out of range 1..={1}")]
    BeadIndex(usize, usize),

    #[error("bead pair ({0}, {1}) not ordered i < j")]
    BadBeadPair(usize, usize),

    #[error("axis {0} out of range 0..=3")]
    BadAxis(u8),

    #[error("orientation must be +1 or -1, got {0}")]
    BadOrientation(i8),

    #[error("contact-energy table: {0}")]
    MjTable(String),

    #[error("contact-energy table checksum mismatch: expected {expected}, got {got}")]
    ChecksumMismatch { expected: String, got: String },

    #[error("config invalid: {0}")]
    Config(String),

    #[error("problem size too large: {0}")]
    TooLarge(String),

    #[error("optimizer: {0}")]
    Optimizer(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

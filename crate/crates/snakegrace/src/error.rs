//! Error types, one enum per subsystem.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error(
        "StringLengthMismatch: string has {got} entries, expected {expected} for {cycles} cycles"
    )]
    StringLengthMismatch {
        got: usize,
        expected: usize,
        cycles: usize,
    },
    #[error("StringEntryOutOfRange: entry d_{index} = {entry} outside [1, {max}] for cycle of length {cycle_len}")]
    StringEntryOutOfRange {
        index: usize,
        entry: u64,
        max: u64,
        cycle_len: usize,
    },
    #[error("NotASnake: {0}")]
    NotASnake(String),
    #[error("CutMismatch: {0}")]
    CutMismatch(String),
    #[error("MalformedTuple: {0}")]
    MalformedTuple(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("UnlabelledVertex: vertex {0} has no label")]
    UnlabelledVertex(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("NegativeLabel: shift by {shift} sends label {label} below zero")]
    NegativeLabel { label: u64, shift: i64 },
    #[error("ComplementUnderflow: constant {c} is smaller than max label {max}")]
    ComplementUnderflow { c: u64, max: u64 },
    #[error("LabelOnePresent: near complement requires 1 absent from the labelling")]
    LabelOnePresent,
    #[error("NotNearGraceful: near complement requires a near graceful labelling (omit-m mode)")]
    NotNearGraceful,
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("OutOfTable: no stored row C_{{4n}}^{{2j}} for n = {n}, j = {j}")]
    OutOfTable { n: u64, j: u64 },
    #[error("UnknownVariant: no row named {0}")]
    UnknownVariant(String),
    #[error("NegativeInstantiation: entry {entry} is negative at T = {t}")]
    NegativeInstantiation { entry: String, t: u64 },
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("StringInvalid: {0}")]
    StringInvalid(String),
    #[error("PlacementOutOfRange: final zero distance {d} not available here ({allowed})")]
    PlacementOutOfRange { d: u64, allowed: String },
    #[error("CaseMismatch: string does not fit case {case}")]
    CaseMismatch { case: u8 },
    #[error("UnsupportedCycleLength: {0}")]
    UnsupportedCycleLength(String),
    #[error("NotGraceful: attachment base must carry a graceful labelling")]
    NotGraceful,
    #[error("NoZeroVertex: designated vertex is not labelled 0")]
    NoZeroVertex,
    #[error("VerificationFailed: built labelling classified as {got}, expected {expected}")]
    VerificationFailed { got: String, expected: String },
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("TooLarge: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

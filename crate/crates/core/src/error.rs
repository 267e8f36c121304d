use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("input is empty")]
    EmptyInput,

    #[error("malformed input at row {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: u64,
        expected: usize,
        found: usize,
    },

    #[error("malformed input at row {row}: {message}")]
    Malformed { row: u64, message: String },

    #[error("measure undefined: {0}")]
    UndefinedMeasure(&'static str),

    #[error("upper bound undefined: {0}")]
    DegenerateBound(&'static str),

    #[error("candidate count overflows 128 bits (m = {attributes}, L = {max_lhs})")]
    Overflow { attributes: usize, max_lhs: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

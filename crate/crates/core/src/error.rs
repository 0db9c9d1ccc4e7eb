use std::fmt;

use thiserror::Error;

/// Byte offsets into parsed input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Self { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub span: SourceSpan,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: found {}", self.span, self.found)?;
        if !self.expected.is_empty() {
            write!(f, ", expected one of: {}", self.expected.join(" "))?;
        }
        Ok(())
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("0/0 is not a fraction")]
    ZeroOverZero,
    #[error("inf + inf is indeterminate")]
    IndeterminateSum,
    #[error("the point at infinity has no continued fraction expansion")]
    InfiniteInput,
    #[error("continued fraction evaluates to infinity")]
    InfiniteValue,
    #[error("cannot force odd length: last two terms cancel")]
    LastTermUnit,
    #[error("vector has no adjacent pair of opposite signs")]
    NoMixedSigns,
    #[error("continued fraction vector must be non-empty")]
    EmptyVector,
    #[error("invalid vector: {0}")]
    InvalidVector(String),
    #[error("tangle is not rational")]
    NotRational,
    #[error("tangle is isotopic to [inf]")]
    InfiniteTangle,
    #[error("no flype site at the root")]
    NoFlypeSite,
    #[error("color fraction undefined for a constant coloring")]
    UndefinedColorFraction,
    #[error("affine recoloring needs a non-zero scale")]
    ZeroScale,
    #[error("closure determinant needs starting colors (1,0) or (0,1)")]
    WrongStartColors,
    #[error("closure coloring inconsistent modulo {modulus}")]
    ClosureInconsistent { modulus: String },
    #[error("color matrices do not share a column")]
    ColumnMismatch,
    #[error("target already reached")]
    AlreadySolved,
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

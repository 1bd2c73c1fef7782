use thiserror::Error;

use crate::verify::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid parameters v={v} k={k} lambda={lambda}")]
    InvalidParams { v: u32, k: u32, lambda: u32 },
    #[error("point {point} repeated in block")]
    RepeatedPoint { point: u32 },
    #[error("block {index}: point {point} out of range for v={v}")]
    PointOutOfRange { index: usize, point: u32, v: u32 },
    #[error("block count {numerator}/{denominator} is not an integer")]
    NonIntegerCount { numerator: u64, denominator: u64 },
    #[error("empty group")]
    EmptyGroup,
    #[error("groups are not a partition: {reason}")]
    NotAPartition { reason: String },
    #[error("eta must be 0 or 1, got {0}")]
    InvalidEta(u32),
    #[error("inflation weight must be positive")]
    InvalidAlpha,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, reason: impl Into<String>) -> Self {
        ParseError { line, reason: reason.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("no field of order {0} is supported")]
    UnsupportedOrder(u32),
    #[error("TD({k},{n}) needs k <= n+1")]
    KTooLarge { k: u32, n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DevelopError {
    #[error("base block {block} has entry {entry} outside Z_{modulus}")]
    EntryOutOfRange { block: usize, entry: u32, modulus: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("cannot verify as {kind}: {reason}")]
    KindMismatch { kind: &'static str, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TradeError {
    #[error("entry has no development modulus")]
    NotDeveloped,
    #[error("{orbits} orbits exceed the orbit search limit of {limit}")]
    TooManyOrbits { orbits: usize, limit: usize },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("transversal design failed verification")]
    TdNotVerified,
    #[error("no ingredient of type {0}")]
    MissingIngredient(String),
    #[error("alignment error: {0}")]
    AlignmentError(String),
    #[error("no filler design on {0} points")]
    MissingFiller(u32),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("block {index} would shrink to {size} points")]
    BlockTooSmall { index: usize, size: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Error)]
pub enum RecipeError {
    #[error("recipe line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("recipe refers to undefined name `{0}`")]
    UnknownName(String),
    #[error("recipe has a dependency cycle through `{0}`")]
    CyclicDependency(String),
    #[error("recipe has no output step")]
    NoOutput,
    #[error("step `{step}`: {source}")]
    Step {
        step: String,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },
    #[error("step `{step}` failed verification")]
    StepVerificationFailed { step: String, report: Box<VerificationReport> },
}

//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("scalar fields differ: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("binary scalar operation is missing its second operand")]
    MissingOperand,

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("truncation too expensive: exceeded {limit} entries at degree {degree_reached}")]
    TruncationTooExpensive { limit: usize, degree_reached: usize },

    #[error("resource cap exceeded during basis completion at degree {degree_reached}")]
    CompletionTooExpensive { degree_reached: usize },

    #[error("cannot delete every vertex of the quiver")]
    EmptyContraction,

    #[error("presentation not degree-1 minimal: relation `{0}` has a term of order < 2")]
    NotDegreeOneMinimal(String),

    #[error("point counts differ: {algebra_points} deformed points vs {gamma_points} test-algebra points")]
    PointCountMismatch { algebra_points: usize, gamma_points: usize },

    #[error("search space too large: {size} candidates exceeds the cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },

    #[error("characteristic too small: p = {p} but the computation needs p > {needed}")]
    CharacteristicTooSmall { p: u64, needed: u64 },

    #[error("test algebras must live over a prime field, got {0}")]
    NotPrimeField(String),

    #[error("unsupported element: {0}")]
    UnsupportedElement(String),

    #[error("invalid differential graded data: {0}")]
    InvalidDgla(String),
}

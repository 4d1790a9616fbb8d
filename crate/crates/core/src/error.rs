use thiserror::Error;

use crate::cli::dsl::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable list mismatch: {left} vs {right} variables")]
    VariableMismatch { left: usize, right: usize },
    #[error("unknown variable index {0}")]
    UnknownVariable(usize),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("term ceiling exceeded: {terms} terms > {ceiling}")]
    TermCeiling { terms: usize, ceiling: usize },
    #[error("chart mismatch: `{left}` vs `{right}`")]
    ChartMismatch { left: String, right: String },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("form degree {degree} out of range for dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("interior product of a 0-form")]
    ZeroDegree,
    #[error("wrong dimension: {0}")]
    Dimension(String),
    #[error("wrong rank: {0}")]
    Rank(String),
    #[error("not contact: {0}")]
    NotContact(String),
    #[error("not even contact: {0}")]
    NotEvenContact(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Crate-wide error type. Variant names follow the operation contracts.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("operands come from different rings")]
    MixedRings,
    #[error("element is not a unit")]
    NonUnit,
    #[error("ring cannot be enumerated: {0}")]
    Unenumerable(String),
    #[error("malformed descriptor: {0}")]
    BadDescriptor(String),
    #[error("integrality failure during universal polynomial solve: {0}")]
    IntegralityFailure(String),
    #[error("Witt length too short: {0}")]
    LengthUnderflow(String),
    #[error("coefficient ring does not have characteristic p")]
    CharNotP,
    #[error("coefficient ring is not a finite field")]
    NotAField,
    #[error("coefficient ring is not local with p nilpotent")]
    NotLocal,
    #[error("matrix is not in H^mu: {0}")]
    NotInHmu(String),
    #[error("matrix fails the subgroup equations")]
    NotInSubgroup,
    #[error("element does not sigma-centralize the base point")]
    NotInJb,
    #[error("inputs are not congruent modulo the square-zero ideal")]
    NotCongruent,
    #[error("display is not adjoint nilpotent: {0}")]
    NotAdjointNilpotent(String),
    #[error("matrix decomposition violates the graded splitting: {0}")]
    BadDecomposition(String),
    #[error("search space exceeds the caller bound: {0}")]
    SearchSpaceTooLarge(String),
    #[error("carried Witt precision is insufficient: {0}")]
    InsufficientPrecision(String),
    #[error("matrix is not invertible at the carried precision")]
    NotInvertible,
    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

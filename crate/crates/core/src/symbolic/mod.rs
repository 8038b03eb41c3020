//! Exact rational-function arithmetic: the scalar field of every tensor
//! component in the engine.

mod expr;
mod matrix;
mod parse;
mod poly;
mod sample;

pub use expr::{dot, Expr};
pub use matrix::ExprMatrix;
pub use parse::parse_expr;
pub use poly::{gcd, Monomial, Poly};
pub use sample::PointSampler;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by the zero expression")]
    DivisionByZero,
    #[error("unknown coordinate '{0}'")]
    UnknownCoordinate(String),
    #[error("expression has a pole at the evaluation point")]
    Pole,
    #[error("assignment covers {given} coordinates, expression needs {needed}")]
    IncompleteAssignment { needed: usize, given: usize },
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
}

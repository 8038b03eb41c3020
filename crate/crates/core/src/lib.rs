//! Exact verification engine for Lorentzian almost-contact metric manifolds
//! described in a frame, together with their invariant submanifolds.
//!
//! Everything is computed over rational functions in the chart coordinates:
//! the Levi-Civita connection from the Koszul formula, Riemann/Ricci/scalar
//! and concircular curvature, the trans-Sasakian functions, the second
//! fundamental form and normal curvature of a distribution, and the
//! Tachibana tensors built from them. Identities are decided exactly.

pub mod check;
pub mod curvature;
pub mod fixtures;
pub mod frame;
pub mod structure;
pub mod submanifold;
pub mod symbolic;
pub mod tachibana;

pub use symbolic::{Expr, ExprMatrix, SymbolicError};

//! Exact arithmetic over finite fields: elements, polynomials and dense matrices.

pub mod field;
pub mod matrix;
pub mod poly;

pub use field::{default_irreducible, Field, FieldElement, FieldOp, Operand};
pub use matrix::{Matrix, Rref};
pub use poly::{poly_arith, PolyOp, PolyResult, Polynomial};

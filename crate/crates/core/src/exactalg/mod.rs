//! Exact arithmetic: ground fields, sparse polynomials, and matrices over both.

pub mod matrix;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use matrix::{subsets, PolyMatrix, ScalarMatrix};
pub use parse::parse_poly;
pub use poly::{Monomial, MultiPoly, PolyRing, Ring};
pub use scalar::{Field, Fp, Scalar};

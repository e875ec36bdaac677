//! Polynomial algebra in matrix-entry variables and exact linear algebra over ℚ(i).

pub mod linsolve;
pub mod matrix;
pub mod poly;

pub use linsolve::{solve_linear_exact, Solution};
pub use matrix::RationalMatrix;
pub use poly::{leading_minor, Block, ComplexCoordinate, LinearForm, MatrixPolynomial, Monomial, Shape, VarId};

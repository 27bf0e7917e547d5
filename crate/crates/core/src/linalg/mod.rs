//! Exact rational scalars, vectors and matrices.

mod matrix;
mod rational;

pub use matrix::{int_determinant, RatMatrix, RatVector};
pub use rational::Rational;

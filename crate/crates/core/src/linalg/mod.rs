//! Exact linear algebra over the integers and over GF(2).

mod gf2;
mod int_matrix;
mod snf;

pub use gf2::{solve_gf2, BitVector, Gf2Matrix};
pub use int_matrix::IntMatrix;
pub use snf::{snf, SnfResult};

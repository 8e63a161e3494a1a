//! Exact integer and rational linear algebra. No floating point.

pub mod encoding;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod smith;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use matrix::{IntMatrix, Matrix, RatMatrix, Ring};
pub use poly::{charpoly, CharPoly, IntPoly};
pub use smith::smith_normal_form;

use crate::error::Result;

/// `E_ij(c)` in SL(3,Z), with 1-based indices as usually written.
pub fn e3(i: usize, j: usize, c: i64) -> IntMatrix {
    IntMatrix::elementary(3, i - 1, j - 1, BigInt::from(c))
}

pub fn e12(c: i64) -> IntMatrix {
    e3(1, 2, c)
}

pub fn e13(c: i64) -> IntMatrix {
    e3(1, 3, c)
}

pub fn e23(c: i64) -> IntMatrix {
    e3(2, 3, c)
}

/// Exact determinant and inverse of a rational matrix.
pub fn det_inv(a: &RatMatrix) -> Result<(BigRational, Option<RatMatrix>)> {
    a.require_square()?;
    Ok(a.det_inv())
}

/// `P A P^{-1}`; `P` must have determinant `±1`.
pub fn conjugate(a: &IntMatrix, p: &IntMatrix) -> Result<IntMatrix> {
    a.conjugate_by(p)
}

pub fn matrix_pow(a: &IntMatrix, k: i64) -> Result<IntMatrix> {
    a.pow(k)
}

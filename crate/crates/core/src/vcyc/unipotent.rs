//! Unipotent elements: logarithms, center test, and unitriangular normal form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::lattice::{adapted_basis, integer_kernel, saturation};
use crate::exact::{IntMatrix, RatMatrix};

/// `(A - I)^n = 0` for an `n x n` matrix.
pub fn is_unipotent_rat(a: &RatMatrix) -> bool {
    if !a.is_square() {
        return false;
    }
    let n = a.dim();
    let nil = a - &RatMatrix::identity(n);
    nil.pow_u(n as u64).is_zero()
}

pub fn is_unipotent(a: &IntMatrix) -> bool {
    is_unipotent_rat(&a.to_rat())
}

/// Logarithm of a unipotent matrix together with its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotentLog {
    pub log: RatMatrix,
    pub source: IntMatrix,
}

/// `log(I + N) = N - N^2/2 + N^3/3 - ...`, a finite sum for nilpotent `N`.
pub fn log_unipotent(a: &RatMatrix) -> Result<RatMatrix> {
    a.require_square()?;
    if !is_unipotent_rat(a) {
        return Err(Error::NotUnipotent);
    }
    let n = a.dim();
    let nil = a - &RatMatrix::identity(n);
    let mut acc = RatMatrix::zeros(n, n);
    let mut power = nil.clone();
    for k in 1..n.max(1) {
        let coeff = BigRational::new(if k % 2 == 1 { BigInt::one() } else { -BigInt::one() }, BigInt::from(k));
        acc = &acc + &power.scale(&coeff);
        power = &power * &nil;
    }
    Ok(acc)
}

/// `exp(N) = I + N + N^2/2! + ...` for nilpotent `N`.
pub fn exp_nilpotent(nil: &RatMatrix) -> Result<RatMatrix> {
    nil.require_square()?;
    let n = nil.dim();
    if !nil.pow_u(n as u64).is_zero() {
        return Err(Error::Malformed("exp_nilpotent needs a nilpotent matrix".into()));
    }
    let mut acc = RatMatrix::identity(n);
    let mut term = RatMatrix::identity(n);
    for k in 1..n {
        term = (&term * nil).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
        acc = &acc + &term;
    }
    Ok(acc)
}

pub fn nilpotent_log(a: &IntMatrix) -> Result<NilpotentLog> {
    Ok(NilpotentLog { log: log_unipotent(&a.to_rat())?, source: a.clone() })
}

fn nilpotent_part(a: &IntMatrix) -> Result<IntMatrix> {
    if a.dim() != 3 || !a.is_square() {
        return Err(Error::DimensionMismatch { expected: 3, found: a.rows() });
    }
    if !is_unipotent(a) {
        return Err(Error::NotUnipotent);
    }
    if a.is_identity() {
        return Err(Error::FiniteOrder);
    }
    Ok(a - &IntMatrix::identity(3))
}

/// A unipotent `A != I` is conjugate into the center of Tr(3,Z) iff `(A - I)^2 = 0`.
pub fn is_center_conjugable(a: &IntMatrix) -> Result<bool> {
    let n = nilpotent_part(a)?;
    Ok((&n * &n).is_zero())
}

/// `P` in SL(3,Z) with `T = P A P^{-1}` upper unitriangular. When
/// `(A - I)^2 = 0` the result is `T = E13(c)`.
///
/// The columns of `P^{-1}` form a basis adapted to the flag `L1 ⊂ L2 ⊂ Z^3`
/// with `N(L1) = 0`, `N(L2) ⊆ L1` and `N(Z^3) ⊆ L2`, where `N = A - I`.
pub fn conjugate_unipotent(a: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let nil = nilpotent_part(a)?;
    let nil2 = &nil * &nil;
    let (l1, l2) = if nil2.is_zero() {
        (saturation(&nil), integer_kernel(&nil))
    } else {
        (integer_kernel(&nil), integer_kernel(&nil2))
    };
    let mut q = adapted_basis(3, &[l1, l2])?;
    if q.det() != BigInt::one() {
        for i in 0..3 {
            let v = -q.get(i, 2).clone();
            q.set(i, 2, v);
        }
    }
    let p = q.inverse_unimodular()?;
    let t = &(&p * a) * &q;
    debug_assert!(t.is_upper_unitriangular());
    Ok((p, t))
}

/// Whether only the `(1,3)` entry of `T - I` is nonzero.
pub fn is_central_form(t: &IntMatrix) -> bool {
    t.is_upper_unitriangular() && t.get(0, 1).is_zero() && t.get(1, 2).is_zero() && !t.get(0, 2).is_zero()
}

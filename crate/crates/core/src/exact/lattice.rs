//! Saturated sublattices of Z^n: kernels, saturations, adapted bases.
//!
//! A sublattice is passed around as an `n x k` integer matrix whose columns
//! form a basis of it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// Basis (as columns) of `{x in Z^n : A x = 0}`. The result is saturated.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let (_, d, v) = smith_normal_form(a);
    let n = a.cols();
    let rank = (0..d.rows().min(n)).filter(|&i| !d.get(i, i).is_zero()).count();
    v.block(0, n, rank, n)
}

/// Returns a unimodular `W` and `r` such that the first `r` columns of `W`
/// are a basis of `span_Q(S) ∩ Z^n`, where `S` is given by its columns.
pub fn saturate_and_complete(s: &IntMatrix) -> (IntMatrix, usize) {
    let n = s.rows();
    if s.cols() == 0 {
        return (IntMatrix::identity(n), 0);
    }
    let (u, d, _) = smith_normal_form(s);
    let rank = (0..d.rows().min(d.cols())).filter(|&i| !d.get(i, i).is_zero()).count();
    let w = u.inverse_unimodular().expect("Smith transform is unimodular");
    (w, rank)
}

/// Basis of the saturation of the column span of `S`.
pub fn saturation(s: &IntMatrix) -> IntMatrix {
    let (w, r) = saturate_and_complete(s);
    w.block(0, s.rows(), 0, r)
}

/// Unimodular `Q` adapted to a chain of saturated sublattices
/// `L_1 ⊂ L_2 ⊂ ... ⊂ Z^n`: for each `i` the first `rank(L_i)` columns
/// of `Q` span `L_i`.
pub fn adapted_basis(n: usize, flag: &[IntMatrix]) -> Result<IntMatrix> {
    let mut q = IntMatrix::identity(n);
    let mut done = 0usize;
    for level in flag {
        if level.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, found: level.rows() });
        }
        // coordinates of the level in the current basis, projected away from
        // the part already fixed
        let q_inv = q.inverse_unimodular()?;
        let coords = &q_inv * level;
        if (done..n).all(|i| (0..coords.cols()).all(|j| coords.get(i, j).is_zero())) {
            continue;
        }
        let tail = coords.block(done, n, 0, coords.cols());
        let (w, r) = saturate_and_complete(&tail);
        let mut embed = IntMatrix::identity(n);
        for i in 0..n - done {
            for j in 0..n - done {
                embed.set(done + i, done + j, w.get(i, j).clone());
            }
        }
        q = &q * &embed;
        done += r;
    }
    Ok(q)
}

/// Divides out the content of an integer vector.
pub fn primitive(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        None
    } else {
        Some(v.iter().map(|x| x / &g).collect())
    }
}

/// Whether the columns of `S` span a saturated lattice of full column rank.
pub fn is_saturated(s: &IntMatrix) -> bool {
    let (_, d, _) = smith_normal_form(s);
    (0..s.cols()).all(|i| i < d.rows() && d.get(i, i).abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let n = IntMatrix::lit([[0, 0, 2], [0, 0, 0], [0, 0, 0]]);
        let k = integer_kernel(&n);
        assert_eq!(k.cols(), 2);
        assert!((&n * &k).is_zero());
        assert!(is_saturated(&k));
    }

    #[test]
    fn saturation_divides_content() {
        let s = IntMatrix::from_rows(vec![vec![2.into()], vec![4.into()], vec![6.into()]]).unwrap();
        let sat = saturation(&s);
        assert_eq!(sat.cols(), 1);
        let col = sat.column(0);
        let p = primitive(&[2.into(), 4.into(), 6.into()]).unwrap();
        assert!(col == p || col.iter().zip(&p).all(|(a, b)| a == &-b));
    }

    #[test]
    fn flag_basis() {
        // L1 = Z(1,1,0), L2 = {x3 = 0}
        let l1 = IntMatrix::from_rows(vec![vec![1.into()], vec![1.into()], vec![0.into()]]).unwrap();
        let l2 = IntMatrix::lit([[1, 0, 0], [0, 1, 0], [0, 0, 0]]).block(0, 3, 0, 2);
        let q = adapted_basis(3, &[l1, l2]).unwrap();
        assert!(q.is_unimodular());
        let c0 = q.column(0);
        assert!(c0 == vec![1.into(), 1.into(), 0.into()] || c0 == vec![(-1).into(), (-1).into(), 0.into()]);
        assert!(q.get(2, 1).is_zero());
    }
}

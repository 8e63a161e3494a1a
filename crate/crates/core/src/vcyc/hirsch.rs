use num_rational::BigRational;
use num_traits::Zero;

use super::unipotent::log_unipotent;
use crate::error::{Error, Result};
use crate::exact::RatMatrix;

/// Incremental row-echelon basis of a subspace of `Q^d`.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    /// Adds `v` if it is independent of what is already there.
    fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &f * r;
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        // keep earlier rows reduced against the new pivot
        for (_, row) in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let f = row[pivot].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                *x -= &f * r;
            }
        }
        self.rows.push((pivot, v));
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Dimension of the rational Lie algebra generated by the given matrices,
/// closing their span under `[X, Y] = XY - YX`.
pub fn lie_closure_dim(elements: &[RatMatrix]) -> usize {
    let mut basis: Vec<RatMatrix> = Vec::new();
    let mut echelon = Echelon::default();
    for x in elements {
        if echelon.insert(x.entries().to_vec()) {
            basis.push(x.clone());
        }
    }
    // brackets of every new element against everything before it
    let mut i = 0;
    while i < basis.len() {
        for j in 0..i {
            let c = basis[i].commutator_bracket(&basis[j]);
            if echelon.insert(c.entries().to_vec()) {
                basis.push(c);
            }
        }
        i += 1;
    }
    echelon.dim()
}

/// Hirsch length of the group generated by unipotent matrices: the
/// dimension of the Lie algebra spanned by their logarithms.
pub fn hirsch_length_unipotent(gens: &[RatMatrix]) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Ok(0);
    };
    let n = first.dim();
    let logs = gens
        .iter()
        .map(|g| {
            if g.rows() != n || !g.is_square() {
                return Err(Error::DimensionMismatch { expected: n, found: g.rows() });
            }
            log_unipotent(g)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(lie_closure_dim(&logs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{e12, e13, e23, IntMatrix};

    fn h(gens: &[IntMatrix]) -> usize {
        hirsch_length_unipotent(&gens.iter().map(IntMatrix::to_rat).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn heisenberg_examples() {
        assert_eq!(h(&[e13(1)]), 1);
        assert_eq!(h(&[e12(1), e23(1)]), 3);
        assert_eq!(h(&[e12(1), e13(1)]), 2);
        assert_eq!(h(&[]), 0);
        assert_eq!(h(&[IntMatrix::identity(3)]), 0);
    }

    #[test]
    fn larger_dimension() {
        // Tr(4,Z) is generated by the superdiagonal elementary matrices
        let gens: Vec<IntMatrix> =
            (0..3).map(|i| IntMatrix::elementary(4, i, i + 1, 1.into())).collect();
        assert_eq!(h(&gens), 6);
    }

    #[test]
    fn rejects_non_unipotent() {
        let a = IntMatrix::lit([[2, 1], [1, 1]]).to_rat();
        assert_eq!(hirsch_length_unipotent(&[a]), Err(Error::NotUnipotent));
    }
}

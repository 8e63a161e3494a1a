use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, RatMatrix};

/// A finite chain complex of Q-vector spaces
/// `C_top -> ... -> C_1 -> C_0`.
///
/// `boundaries[k]` is `d_{k+1}: C_{k+1} -> C_k`, a `dims[k] x dims[k+1]` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexQ {
    dims: Vec<usize>,
    boundaries: Vec<RatMatrix>,
}

impl ChainComplexQ {
    /// Checks shapes and `d_k ∘ d_{k+1} = 0` exactly.
    pub fn new(dims: Vec<usize>, boundaries: Vec<RatMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::InvalidComplex(format!(
                "{} chain groups need {} boundary maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows() != dims[k] || d.cols() != dims[k + 1] {
                return Err(Error::InvalidComplex(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        for k in 1..boundaries.len() {
            if !(&boundaries[k - 1] * &boundaries[k]).is_zero() {
                return Err(Error::InvalidComplex(format!("d_{} ∘ d_{} is not zero", k, k + 1)));
            }
        }
        Ok(ChainComplexQ { dims, boundaries })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, k: usize) -> Option<&RatMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    fn rank_of(&self, k: usize) -> usize {
        self.boundary(k).map_or(0, RatMatrix::rank)
    }

    /// `dim ker d_k - rank d_{k+1}`.
    pub fn betti(&self, k: usize) -> usize {
        self.dims.get(k).map_or(0, |&d| d - self.rank_of(k) - self.rank_of(k + 1))
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..self.dims.len()).map(|k| self.betti(k)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

/// Cellular chain complex of the mapping torus of the torus map induced by
/// `M`.
///
/// The torus has one cell in degrees 0 and 2 and two in degree 1, all with
/// zero boundary; the map acts by `1`, `M`, `det M`. The mapping torus has
/// chains `C_k(T^2) ⊕ C_{k-1}(T^2)` and `d(c, c') = (dc + (f - 1)c', -dc')`.
pub fn mapping_torus_complex(m: &IntMatrix) -> Result<ChainComplexQ> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: m.rows().max(m.cols()) });
    }
    if !m.is_unimodular() {
        return Err(Error::NotUnimodular { det: m.det().to_string() });
    }
    let f1 = (m - &IntMatrix::identity(2)).to_rat();
    let f2 = RatMatrix::from_int(&IntMatrix::from_fn(1, 1, |_, _| m.det() - 1));
    // C_0 = [e0], C_1 = [a, b | e0'], C_2 = [t | a', b'], C_3 = [t']
    let d1 = RatMatrix::zeros(1, 3);
    let mut d2 = RatMatrix::zeros(3, 3);
    for i in 0..2 {
        for j in 0..2 {
            d2.set(i, 1 + j, f1.get(i, j).clone());
        }
    }
    let mut d3 = RatMatrix::zeros(3, 1);
    d3.set(0, 0, f2.get(0, 0).clone());
    ChainComplexQ::new(vec![1, 3, 3, 1], vec![d1, d2, d3])
}

/// Rational Betti numbers `(b0, b1, b2, b3)` of the mapping torus of `M`.
pub fn mapping_torus_betti(m: &IntMatrix) -> Result<(usize, usize, usize, usize)> {
    let c = mapping_torus_complex(m)?;
    Ok((c.betti(0), c.betti(1), c.betti(2), c.betti(3)))
}

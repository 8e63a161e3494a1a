//! Spectral data of SL(3,Z) elements read off the characteristic polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{charpoly, CharPoly, IntMatrix, IntPoly};

/// The cyclotomic polynomials of degree at most 2. No cyclotomic polynomial
/// has degree 3, so these are all that can divide a cubic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Cyclotomic {
    Phi1,
    Phi2,
    Phi3,
    Phi4,
    Phi6,
}

impl Cyclotomic {
    pub const ALL: [Cyclotomic; 5] =
        [Cyclotomic::Phi1, Cyclotomic::Phi2, Cyclotomic::Phi3, Cyclotomic::Phi4, Cyclotomic::Phi6];

    pub fn poly(self) -> IntPoly {
        match self {
            Cyclotomic::Phi1 => IntPoly::from_i64(&[-1, 1]),
            Cyclotomic::Phi2 => IntPoly::from_i64(&[1, 1]),
            Cyclotomic::Phi3 => IntPoly::from_i64(&[1, 1, 1]),
            Cyclotomic::Phi4 => IntPoly::from_i64(&[1, 0, 1]),
            Cyclotomic::Phi6 => IntPoly::from_i64(&[1, -1, 1]),
        }
    }

    /// Order of the roots of unity it vanishes on.
    pub fn order(self) -> u32 {
        match self {
            Cyclotomic::Phi1 => 1,
            Cyclotomic::Phi2 => 2,
            Cyclotomic::Phi3 => 3,
            Cyclotomic::Phi4 => 4,
            Cyclotomic::Phi6 => 6,
        }
    }

    pub fn degree(self) -> usize {
        match self {
            Cyclotomic::Phi1 | Cyclotomic::Phi2 => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealSplit {
    ThreeReal,
    OneRealTwoComplex,
    NotApplicable,
}

/// Root structure of a monic integer cubic with constant term `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectralType {
    /// Eigenvalues that are roots of unity, with multiplicity: 0, 1 or 3.
    pub unit_root_count: usize,
    /// Sorted, with multiplicity.
    pub cyclotomic_factors: Vec<Cyclotomic>,
    pub noncyclotomic_part: CharPoly,
    #[serde(with = "crate::exact::encoding::json_int")]
    pub discriminant: BigInt,
    pub real_split: RealSplit,
}

impl SpectralType {
    /// `k` such that every root-of-unity eigenvalue of `A^k` equals 1.
    pub fn normalization_power(&self) -> u32 {
        self.cyclotomic_factors.iter().fold(1u32, |acc, c| acc.lcm(&c.order()))
    }

    pub fn is_unipotent_up_to_power(&self) -> bool {
        self.unit_root_count == 3
    }
}

impl fmt::Display for SpectralType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "units={} cyclotomic={:?} rest=({}) disc={} {:?}",
            self.unit_root_count, self.cyclotomic_factors, self.noncyclotomic_part, self.discriminant, self.real_split
        )
    }
}

/// Discriminant of `x^3 + b x^2 + c x + d`.
pub fn cubic_discriminant(p: &CharPoly) -> BigInt {
    let d = p.poly().coeff(0);
    let c = p.poly().coeff(1);
    let b = p.poly().coeff(2);
    let b2 = &b * &b;
    let c2 = &c * &c;
    BigInt::from(18) * &b * &c * &d - BigInt::from(4) * &b2 * &b * &d + &b2 * &c2
        - BigInt::from(4) * &c2 * &c
        - BigInt::from(27) * &d * &d
}

pub fn spectral_type(p: &CharPoly) -> Result<SpectralType> {
    if p.degree() != 3 {
        return Err(Error::BadPolynomial(format!("{p} has degree {}", p.degree())));
    }
    if p.poly().coeff(0) != BigInt::from(-1) {
        return Err(Error::BadPolynomial(format!("{p} has constant term {}", p.poly().coeff(0))));
    }
    let mut rest = p.poly().clone();
    let mut factors = Vec::new();
    for c in Cyclotomic::ALL {
        let phi = c.poly();
        while let Some(q) = rest.exact_div(&phi) {
            factors.push(c);
            rest = q;
        }
    }
    let unit_root_count: usize = factors.iter().map(|c| c.degree()).sum();
    assert_ne!(unit_root_count, 2, "determinant one forbids exactly two unit-root eigenvalues: {p}");
    let discriminant = cubic_discriminant(p);
    let real_split = if unit_root_count == 0 {
        if discriminant.is_positive() {
            RealSplit::ThreeReal
        } else {
            debug_assert!(!discriminant.is_zero(), "irreducible cubic is separable");
            RealSplit::OneRealTwoComplex
        }
    } else {
        RealSplit::NotApplicable
    };
    Ok(SpectralType {
        unit_root_count,
        cyclotomic_factors: factors,
        noncyclotomic_part: CharPoly::new(rest).expect("quotient of monic by monic is monic"),
        discriminant,
        real_split,
    })
}

/// Spectral type of a matrix, via its characteristic polynomial.
pub fn spectral_type_of(a: &IntMatrix) -> Result<SpectralType> {
    spectral_type(&charpoly(a)?)
}

/// Torsion in SL(3,Z) has order dividing 12.
pub fn is_finite_order(a: &IntMatrix) -> bool {
    a.pow_u(12).is_identity()
}

/// Replaces `A` by `A^k` so that all root-of-unity eigenvalues become 1.
pub fn power_normalize(a: &IntMatrix) -> Result<(u32, IntMatrix)> {
    if is_finite_order(a) {
        return Err(Error::FiniteOrder);
    }
    let st = spectral_type_of(a)?;
    let k = st.normalization_power();
    Ok((k, a.pow_u(k as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::e13;

    fn cp(c: &[i64]) -> CharPoly {
        CharPoly::from_i64(c).unwrap()
    }

    #[test]
    fn irreducible_cubics() {
        let st = spectral_type(&cp(&[-1, -1, 0, 1])).unwrap();
        assert_eq!(st.unit_root_count, 0);
        assert_eq!(st.discriminant, BigInt::from(-23));
        assert_eq!(st.real_split, RealSplit::OneRealTwoComplex);

        let st = spectral_type(&cp(&[-1, -3, 0, 1])).unwrap();
        assert_eq!(st.unit_root_count, 0);
        assert_eq!(st.discriminant, BigInt::from(81));
        assert_eq!(st.real_split, RealSplit::ThreeReal);
    }

    #[test]
    fn unipotent_polynomial() {
        let st = spectral_type(&cp(&[-1, 3, -3, 1])).unwrap();
        assert_eq!(st.cyclotomic_factors, vec![Cyclotomic::Phi1; 3]);
        assert_eq!(st.unit_root_count, 3);
        assert_eq!(st.noncyclotomic_part, cp(&[1]));
        assert_eq!(st.real_split, RealSplit::NotApplicable);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(spectral_type(&cp(&[-1, 1])).is_err());
        assert!(spectral_type(&cp(&[1, 0, 0, 1])).is_err());
        assert!(CharPoly::from_i64(&[-1, 0, 0, 2]).is_err());
    }

    #[test]
    fn finite_order() {
        assert!(is_finite_order(&IntMatrix::identity(3)));
        assert!(is_finite_order(&IntMatrix::lit([[0, -1, 0], [1, 0, 0], [0, 0, 1]])));
        assert!(!is_finite_order(&e13(1)));
    }

    #[test]
    fn normalization() {
        let (k, ak) = power_normalize(&e13(1)).unwrap();
        assert_eq!((k, ak), (1, e13(1)));

        // (x + 1)(x^2 - x - 1): a -1 eigenvalue next to a golden-ratio block
        let a = IntMatrix::lit([[-1, 0, 0], [0, 1, 1], [0, 1, 0]]);
        assert_eq!(a.det(), BigInt::from(1));
        let (k, ak) = power_normalize(&a).unwrap();
        assert_eq!(k, 2);
        let st = spectral_type_of(&ak).unwrap();
        assert_eq!(st.cyclotomic_factors, vec![Cyclotomic::Phi1]);
        assert_eq!(ak, IntMatrix::lit([[1, 0, 0], [0, 2, 1], [0, 1, 1]]));

        let b = IntMatrix::lit([[1, 0, 0], [0, 2, 1], [0, 1, 1]]);
        assert_eq!(power_normalize(&b).unwrap(), (1, b.clone()));

        assert_eq!(power_normalize(&IntMatrix::identity(3)), Err(Error::FiniteOrder));
    }

    #[test]
    fn mixed_torsion_unipotent() {
        // diag(-1,-1,1) times a commuting unipotent: x^3 + x^2 - x - 1 = (x-1)(x+1)^2
        let a = IntMatrix::lit([[-1, -1, 0], [0, -1, 0], [0, 0, 1]]);
        let st = spectral_type_of(&a).unwrap();
        assert_eq!(st.cyclotomic_factors, vec![Cyclotomic::Phi1, Cyclotomic::Phi2, Cyclotomic::Phi2]);
        assert_eq!(st.normalization_power(), 2);
    }
}

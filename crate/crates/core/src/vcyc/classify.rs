use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::spectra::{is_finite_order, power_normalize, spectral_type_of, RealSplit, SpectralType};

/// The five classes of infinite virtually cyclic subgroups of SL(3,Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VCTag {
    /// One real eigenvalue and two complex conjugate ones, none a root of unity.
    I1,
    /// Exactly one eigenvalue is a root of unity.
    I1t,
    /// Three real eigenvalues, none `±1`.
    I2,
    /// Unipotent up to a power, not conjugate into the center of Tr(3,Z).
    I2t,
    /// Conjugate (up to a power) into the center of Tr(3,Z).
    I3,
}

impl VCTag {
    pub const ALL: [VCTag; 5] = [VCTag::I1, VCTag::I1t, VCTag::I2, VCTag::I2t, VCTag::I3];

    pub fn as_str(self) -> &'static str {
        match self {
            VCTag::I1 => "I1",
            VCTag::I1t => "I1t",
            VCTag::I2 => "I2",
            VCTag::I2t => "I2t",
            VCTag::I3 => "I3",
        }
    }

    pub fn is_unipotent_class(self) -> bool {
        matches!(self, VCTag::I2t | VCTag::I3)
    }
}

impl fmt::Display for VCTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VCTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VCTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown class tag {s:?}")))
    }
}

/// Result of classifying one generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VCClass {
    pub tag: VCTag,
    pub normalization_power: u32,
    pub spectral: SpectralType,
    /// `(A^k - I)^2` for the unipotent branches.
    pub unipotent_square: Option<IntMatrix>,
}

/// Rejects anything that is not a 3x3 integer matrix of determinant 1.
pub fn require_sl3(a: &IntMatrix) -> Result<()> {
    if !a.is_square() || a.dim() != 3 {
        return Err(Error::NotSpecialLinear(format!("expected 3x3, got {}x{}", a.rows(), a.cols())));
    }
    let det = a.det();
    if !det.is_one() {
        return Err(Error::NotSpecialLinear(format!("determinant {det}")));
    }
    Ok(())
}

pub fn classify(a: &IntMatrix) -> Result<VCClass> {
    require_sl3(a)?;
    if is_finite_order(a) {
        return Err(Error::FiniteOrder);
    }
    let spectral = spectral_type_of(a)?;
    let (tag, power, square) = match spectral.unit_root_count {
        0 => match spectral.real_split {
            RealSplit::OneRealTwoComplex => (VCTag::I1, 1, None),
            RealSplit::ThreeReal => (VCTag::I2, 1, None),
            RealSplit::NotApplicable => unreachable!("irreducible cubic always has a real split"),
        },
        1 => (VCTag::I1t, spectral.normalization_power(), None),
        3 => {
            let (k, ak) = power_normalize(a)?;
            let n = &ak - &IntMatrix::identity(3);
            let n2 = &n * &n;
            let tag = if n2.is_zero() { VCTag::I3 } else { VCTag::I2t };
            (tag, k, Some(n2))
        }
        other => unreachable!("unit root count {other} cannot occur in SL(3,Z)"),
    };
    Ok(VCClass { tag, normalization_power: power, spectral, unipotent_square: square })
}

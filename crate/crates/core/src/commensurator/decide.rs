use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{CyclicSubgroup, SearchBound};
use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::spectra::power_normalize;
use crate::vcyc::{classify, log_unipotent, require_sl3, VCTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Proportional logarithms of unipotent powers.
    UnipotentLogs,
    /// Found by the bounded power search.
    PowerSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Refutation {
    /// The class tag is a commensurability invariant.
    ClassMismatch { left: VCTag, right: VCTag },
    /// Unipotent powers have non-proportional logarithms.
    LogsNotProportional,
    /// For semisimple classes `A^n = B^m` forces `AB = BA`.
    NonCommuting,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Commensurability {
    /// `A^n = B^m` with `n, m != 0`.
    Yes { n: i64, m: i64, method: Method },
    No { refutation: Refutation },
    Unknown { power_bound: u32 },
}

impl Commensurability {
    pub fn is_yes(&self) -> bool {
        matches!(self, Commensurability::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Commensurability::No { .. })
    }

    pub fn witness(&self) -> Option<(i64, i64)> {
        match self {
            Commensurability::Yes { n, m, .. } => Some((*n, *m)),
            _ => None,
        }
    }
}

/// Smallest `n >= 1`, then smallest `|m|` (positive first), with
/// `A^n = B^m` and `|n|, |m| <= bound`.
pub fn bounded_power_search(a: &IntMatrix, b: &IntMatrix, bound: u32) -> Result<Option<(i64, i64)>> {
    let k = i64::from(bound);
    let b_inv = b.inverse_unimodular()?;
    let mut b_powers: HashMap<IntMatrix, i64> = HashMap::new();
    let (mut pos, mut neg) = (b.clone(), b_inv.clone());
    for m in 1..=k {
        b_powers.entry(pos.clone()).or_insert(m);
        b_powers.entry(neg.clone()).or_insert(-m);
        pos = &pos * b;
        neg = &neg * &b_inv;
    }
    let mut a_pow = a.clone();
    for n in 1..=k {
        if let Some(&m) = b_powers.get(&a_pow) {
            return Ok(Some((n, m)));
        }
        a_pow = &a_pow * a;
    }
    Ok(None)
}

/// `Some(λ)` with `x = λ y`, for `y != 0`.
fn proportionality(x: &crate::exact::RatMatrix, y: &crate::exact::RatMatrix) -> Option<BigRational> {
    let idx = y.entries().iter().position(|e| !e.is_zero())?;
    let lambda = &x.entries()[idx] / &y.entries()[idx];
    (y.scale(&lambda) == *x).then_some(lambda)
}

pub fn commensurable(a: &IntMatrix, b: &IntMatrix, bound: SearchBound) -> Result<Commensurability> {
    bound.validate()?;
    let ca = classify(a)?;
    let cb = classify(b)?;
    if ca.tag != cb.tag {
        return Ok(Commensurability::No { refutation: Refutation::ClassMismatch { left: ca.tag, right: cb.tag } });
    }

    if ca.tag.is_unipotent_class() {
        // <A> and <A^k> are commensurable, so compare unipotent powers exactly.
        let (ka, ua) = power_normalize(a)?;
        let (kb, ub) = power_normalize(b)?;
        let la = log_unipotent(&ua.to_rat())?;
        let lb = log_unipotent(&ub.to_rat())?;
        let Some(lambda) = proportionality(&la, &lb) else {
            return Ok(Commensurability::No { refutation: Refutation::LogsNotProportional });
        };
        // ua^q = ub^p for lambda = p/q
        let (p, q) = (lambda.numer().clone(), lambda.denom().clone());
        let n = (q * ka).to_i64();
        let m = (p * kb).to_i64();
        let (Some(n), Some(m)) = (n, m) else {
            return Err(Error::BoundExhausted("commensurability exponents exceed i64".into()));
        };
        if a.pow(n)? != b.pow(m)? {
            unreachable!("proportional unipotent logarithms must give equal powers");
        }
        return Ok(Commensurability::Yes { n, m, method: Method::UnipotentLogs });
    }

    if !a.commutes_with(b) {
        return Ok(Commensurability::No { refutation: Refutation::NonCommuting });
    }
    Ok(match bounded_power_search(a, b, bound.power_bound)? {
        Some((n, m)) => Commensurability::Yes { n, m, method: Method::PowerSearch },
        None => Commensurability::Unknown { power_bound: bound.power_bound },
    })
}

/// Whether `g` lies in the commensurator of `H`: some `g^{-1} A^n g = A^m`.
pub fn in_commensurator(g: &IntMatrix, h: &CyclicSubgroup, bound: SearchBound) -> Result<Commensurability> {
    require_sl3(g)?;
    let g_inv = g.inverse_unimodular()?;
    let conj = &(&g_inv * &h.generator) * g;
    commensurable(&conj, &h.generator, bound)
}

/// `|n|` and `|m|` of a witness are nonzero by construction; convenience for callers.
pub fn witness_is_valid(a: &IntMatrix, b: &IntMatrix, n: i64, m: i64) -> Result<bool> {
    Ok(n != 0 && m != 0 && a.pow(n)? == b.pow(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{e12, e13};

    fn bound() -> SearchBound {
        SearchBound::default()
    }

    #[test]
    fn unipotent_pairs() {
        let r = commensurable(&e13(2), &e13(3), bound()).unwrap();
        assert_eq!(r, Commensurability::Yes { n: 3, m: 2, method: Method::UnipotentLogs });
        let r = commensurable(&e12(1), &e13(1), bound()).unwrap();
        assert_eq!(r, Commensurability::No { refutation: Refutation::LogsNotProportional });
    }

    #[test]
    fn inverse_is_commensurable() {
        let a = IntMatrix::lit([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
        let inv = a.pow(-1).unwrap();
        assert_eq!(commensurable(&a, &inv, bound()).unwrap().witness(), Some((1, -1)));
        let u = IntMatrix::lit([[1, 1, 0], [0, 1, 1], [0, 0, 1]]);
        assert_eq!(commensurable(&u, &u.pow(-1).unwrap(), bound()).unwrap().witness(), Some((1, -1)));
    }

    #[test]
    fn class_filter() {
        let i1 = IntMatrix::lit([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
        let i2 = IntMatrix::lit([[0, 0, 1], [1, 0, 3], [0, 1, 0]]);
        let r = commensurable(&i1, &i2, bound()).unwrap();
        assert_eq!(
            r,
            Commensurability::No { refutation: Refutation::ClassMismatch { left: VCTag::I1, right: VCTag::I2 } }
        );
    }

    #[test]
    fn semisimple_powers_and_unknown() {
        let a = IntMatrix::lit([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
        let r = commensurable(&a.pow(4).unwrap(), &a.pow(6).unwrap(), bound()).unwrap();
        assert_eq!(r, Commensurability::Yes { n: 3, m: 2, method: Method::PowerSearch });
        // exponents beyond the search bound
        let r = commensurable(&a, &a.pow(13).unwrap(), bound()).unwrap();
        assert_eq!(r, Commensurability::Unknown { power_bound: 12 });
        // a non-commuting conjugate is refuted
        let p = e12(1);
        let c = a.conjugate_by(&p).unwrap();
        let r = commensurable(&a, &c, bound()).unwrap();
        assert_eq!(r, Commensurability::No { refutation: Refutation::NonCommuting });
    }

    #[test]
    fn torsion_twisted_unipotent_pair() {
        // A^2 = E12(2); compare with E12(1)
        let a = IntMatrix::lit([[-1, -1, 0], [0, -1, 0], [0, 0, 1]]);
        let r = commensurable(&a, &e12(1), bound()).unwrap();
        let (n, m) = r.witness().unwrap();
        assert!(witness_is_valid(&a, &e12(1), n, m).unwrap());
    }

    #[test]
    fn commensurator_membership() {
        let h = CyclicSubgroup::new(e13(1)).unwrap();
        assert_eq!(in_commensurator(&e13(1), &h, bound()).unwrap().witness(), Some((1, 1)));
        let u = IntMatrix::lit([[1, 2, -3], [0, 1, 5], [0, 0, 1]]);
        assert!(in_commensurator(&u, &h, bound()).unwrap().is_yes());
        let swap = IntMatrix::lit([[0, 0, 1], [0, -1, 0], [1, 0, 0]]);
        assert!(in_commensurator(&swap, &h, bound()).unwrap().is_no());

        let a = IntMatrix::lit([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
        let h = CyclicSubgroup::new(a.clone()).unwrap();
        assert_eq!(in_commensurator(&a, &h, bound()).unwrap().witness(), Some((1, 1)));
    }

    #[test]
    fn errors() {
        assert_eq!(commensurable(&IntMatrix::identity(3), &e13(1), bound()), Err(Error::FiniteOrder));
        let bad = SearchBound { power_bound: 0, entry_bound: 3 };
        assert!(matches!(commensurable(&e13(1), &e13(1), bad), Err(Error::InvalidBound(_))));
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{IntMatrix, Matrix, Ring};
use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x - r`
    pub fn linear(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Division by a monic divisor; exact over Z.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (IntPoly::new(vec![]), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &lead * d;
            }
            quot[k] = lead;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Quotient when `divisor` divides exactly.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(v: Vec<BigInt>) -> Self {
        IntPoly::new(v)
    }
}

impl From<IntPoly> for Vec<BigInt> {
    fn from(p: IntPoly) -> Self {
        p.coeffs
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self.coeffs.iter().map(super::encoding::int_to_value).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter()
            .map(super::encoding::int_from_value)
            .collect::<Result<Vec<_>>>()
            .map(IntPoly::new)
            .map_err(serde::de::Error::custom)
    }
}

/// Characteristic polynomial `det(xI - A)`: monic, constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "IntPoly", into = "IntPoly")]
pub struct CharPoly(IntPoly);

impl CharPoly {
    pub fn new(p: IntPoly) -> Result<Self> {
        if p.is_monic() {
            Ok(CharPoly(p))
        } else {
            Err(Error::BadPolynomial(format!("{p} is not monic")))
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(IntPoly::from_i64(coeffs))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }
}

impl TryFrom<IntPoly> for CharPoly {
    type Error = Error;

    fn try_from(p: IntPoly) -> Result<Self> {
        CharPoly::new(p)
    }
}

impl From<CharPoly> for IntPoly {
    fn from(c: CharPoly) -> Self {
        c.0
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Characteristic polynomial of an integer matrix.
///
/// Up to 4x4 this expands `det(xI - A)` by cofactors over Z[x]; larger
/// matrices go through the division-free Berkowitz recurrence.
pub fn charpoly(a: &IntMatrix) -> Result<CharPoly> {
    a.require_square()?;
    let coeffs = if a.dim() <= 4 {
        cofactor_charpoly(a)
    } else {
        IntPoly::new(berkowitz(a))
    };
    CharPoly::new(coeffs)
}

fn cofactor_charpoly(a: &IntMatrix) -> IntPoly {
    let n = a.dim();
    let entries: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -a.get(i, j).clone();
                    if i == j {
                        IntPoly::new(vec![c, BigInt::one()])
                    } else {
                        IntPoly::new(vec![c])
                    }
                })
                .collect()
        })
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    laplace(&entries, 0, &cols)
}

fn laplace(m: &[Vec<IntPoly>], row: usize, cols: &[usize]) -> IntPoly {
    if cols.is_empty() {
        return IntPoly::one();
    }
    let mut acc = IntPoly::new(vec![]);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &m[row][c] * &laplace(m, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Berkowitz: characteristic polynomial over any commutative ring, no division.
/// Returns `det(xI - A)` constant-first.
pub fn berkowitz<T: Ring>(a: &Matrix<T>) -> Vec<T> {
    let n = a.dim();
    // Running polynomial, highest degree first.
    let mut poly: Vec<T> = vec![T::one()];
    for r in 0..n {
        // Leading principal (r+1)x(r+1) block split as [[A_r, C],[R, a_rr]].
        let a_rr = a.get(r, r).clone();
        // Toeplitz column: 1, -a_rr, -R C, -R A_r C, ...
        let mut col: Vec<T> = Vec::with_capacity(r + 2);
        col.push(T::one());
        col.push(-a_rr);
        let mut v: Vec<T> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(T::zero(), |acc, j| acc + &(a.get(r, j).clone() * &v[j]));
            col.push(-rc);
            v = (0..r)
                .map(|i| (0..r).fold(T::zero(), |acc, j| acc + &(a.get(i, j).clone() * &v[j])))
                .collect();
        }
        let mut next = vec![T::zero(); poly.len() + 1];
        for (i, ci) in col.iter().enumerate() {
            for (j, pj) in poly.iter().enumerate() {
                if i + j < next.len() {
                    next[i + j] = std::mem::replace(&mut next[i + j], T::zero()) + &(ci.clone() * pj);
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    poly
}

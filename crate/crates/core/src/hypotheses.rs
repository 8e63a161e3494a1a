//! Checkable forms of two hypotheses on finitely generated matrix groups:
//! integral characteristic (tested on words up to a length bound) and a
//! bound on the Hirsch length of unipotent subgroups.

use std::collections::HashSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::encoding::{rat_matrix_from_value, rational_to_value};
use crate::exact::poly::berkowitz;
use crate::exact::RatMatrix;
use crate::vcyc::{hirsch_length_unipotent, is_unipotent_rat};

/// Invertible rational matrices of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub dimension: usize,
    pub generators: Vec<RatMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip)]
    inverses: Vec<RatMatrix>,
}

impl GeneratorSet {
    pub fn new(dimension: usize, generators: Vec<RatMatrix>) -> Result<Self> {
        let mut inverses = Vec::with_capacity(generators.len());
        for g in &generators {
            g.require_square()?;
            if g.dim() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, found: g.dim() });
            }
            let (_, inv) = g.det_inv();
            inverses.push(inv.ok_or(Error::Singular)?);
        }
        Ok(GeneratorSet { dimension, generators, labels: None, inverses })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.generators.len() {
            return Err(Error::DimensionMismatch { expected: self.generators.len(), found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// `{"dimension": n, "generators": [matrix, ...], "labels": [...]?}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let dimension = v
            .get("dimension")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field \"dimension\"".into()))? as usize;
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field \"generators\"".into()))?
            .iter()
            .map(rat_matrix_from_value)
            .collect::<Result<Vec<_>>>()?;
        let set = GeneratorSet::new(dimension, gens)?;
        match v.get("labels") {
            None | Some(Value::Null) => Ok(set),
            Some(Value::Array(ls)) => set.with_labels(
                ls.iter()
                    .map(|l| l.as_str().map(str::to_owned).ok_or_else(|| Error::Parse("labels must be strings".into())))
                    .collect::<Result<_>>()?,
            ),
            Some(_) => Err(Error::Parse("labels must be an array".into())),
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Matrix of one letter: `i > 0` is generator `i`, `i < 0` its inverse (1-based).
    pub fn letter(&self, i: i32) -> &RatMatrix {
        let idx = i.unsigned_abs() as usize - 1;
        if i > 0 {
            &self.generators[idx]
        } else {
            &self.inverses[idx]
        }
    }

    pub fn letters(&self) -> Vec<i32> {
        (1..=self.len() as i32).flat_map(|i| [i, -i]).collect()
    }

    /// Product of a word, left to right.
    pub fn eval_word(&self, word: &[i32]) -> RatMatrix {
        word.iter().fold(RatMatrix::identity(self.dimension), |acc, &l| &acc * self.letter(l))
    }
}

/// Characteristic polynomial over Q, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly(pub Vec<BigRational>);

impl RatPoly {
    pub fn charpoly(m: &RatMatrix) -> Self {
        RatPoly(berkowitz(m))
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if i == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for RatPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Value::Array(self.0.iter().map(rational_to_value).collect()).serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IntegralCharVerdict {
    /// Every element given by a word of length at most `max_length` has an
    /// integral characteristic polynomial. `closed` means no new elements
    /// appeared at the last length, so the generated group is finite and
    /// the check is exhaustive.
    Pass { max_length: usize, elements_checked: usize, closed: bool },
    /// First offending word in breadth-first order.
    Violation { word: Vec<i32>, matrix: RatMatrix, charpoly: RatPoly, charpoly_text: String },
}

impl IntegralCharVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, IntegralCharVerdict::Pass { .. })
    }
}

/// Breadth-first search over reduced words of length `<= max_length`,
/// visiting each matrix value once.
pub fn integral_char_check(gens: &GeneratorSet, max_length: usize) -> IntegralCharVerdict {
    let id = RatMatrix::identity(gens.dimension);
    let mut seen: HashSet<RatMatrix> = HashSet::from([id.clone()]);
    let mut frontier: Vec<(Vec<i32>, RatMatrix)> = vec![(Vec::new(), id)];
    let letters = gens.letters();
    let mut closed = false;
    for _ in 0..max_length {
        let mut next = Vec::new();
        for (word, m) in &frontier {
            for &l in &letters {
                if word.last() == Some(&-l) {
                    continue;
                }
                let p = m * gens.letter(l);
                if seen.contains(&p) {
                    continue;
                }
                let mut w = word.clone();
                w.push(l);
                let cp = RatPoly::charpoly(&p);
                if !cp.is_integral() {
                    let charpoly_text = cp.to_string();
                    return IntegralCharVerdict::Violation { word: w, matrix: p, charpoly: cp, charpoly_text };
                }
                seen.insert(p.clone());
                next.push((w, p));
            }
        }
        if next.is_empty() {
            closed = true;
            break;
        }
        frontier = next;
    }
    IntegralCharVerdict::Pass { max_length, elements_checked: seen.len(), closed }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirschReport {
    pub dimension: usize,
    /// 1-based indices of the unipotent generators.
    pub unipotent_generators: Vec<usize>,
    pub non_unipotent_generators: Vec<usize>,
    /// Hirsch length of the subgroup generated by the unipotent generators.
    pub hirsch_length: usize,
    /// `n(n-1)/2`, the Hirsch length of the strictly upper triangular group
    /// over Z (field degree 1 for rational entries).
    pub ceiling: usize,
    pub note: String,
}

pub fn unipotent_hirsch_report(gens: &GeneratorSet) -> HirschReport {
    let n = gens.dimension;
    let (uni, non): (Vec<usize>, Vec<usize>) =
        (1..=gens.len()).partition(|&i| is_unipotent_rat(&gens.generators[i - 1]));
    let uni_mats: Vec<RatMatrix> = uni.iter().map(|&i| gens.generators[i - 1].clone()).collect();
    let hirsch_length = hirsch_length_unipotent(&uni_mats).expect("generators were filtered to unipotent ones");
    let ceiling = n * n.saturating_sub(1) / 2;
    HirschReport {
        dimension: n,
        unipotent_generators: uni,
        non_unipotent_generators: non,
        hirsch_length,
        ceiling,
        note: format!(
            "unipotent subgroups of GL({n},Q) are conjugate into the strictly upper triangular group, \
             whose Hirsch length is n(n-1)/2 = {ceiling}"
        ),
    }
}

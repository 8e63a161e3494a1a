use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::centralizer::{inverting_enum, structured_centralizer};
use super::decide::{in_commensurator, Commensurability};
use super::{CyclicSubgroup, SearchBound};
use crate::error::Result;
use crate::exact::{e12, e13, e23, IntMatrix};
use crate::spectra::power_normalize;
use crate::vcyc::{conjugate_unipotent, VCTag};

/// Isomorphism type of `N[H]`, one per class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsoType {
    /// `Z2 ⊕ Z`
    #[serde(rename = "Z2xZ")]
    Z2xZ,
    /// contains `Z2 ⊕ Z` with index at most two
    #[serde(rename = "Z2xZ-index2")]
    Z2xZIndex2,
    /// `Z2 ⊕ Z^2`
    #[serde(rename = "Z2xZ2free")]
    Z2xZ2Free,
    /// contains `Z^2` with index at most two
    #[serde(rename = "Z2-index2-over-Z2free")]
    Z2Index2OverZ2Free,
    /// `Tr(3,Z) ⋊ (Z2 ⊕ Z2)`
    #[serde(rename = "TrSemidirect")]
    TrSemidirect,
}

impl IsoType {
    pub fn for_class(tag: VCTag) -> Self {
        match tag {
            VCTag::I1 => IsoType::Z2xZ,
            VCTag::I1t => IsoType::Z2xZIndex2,
            VCTag::I2 => IsoType::Z2xZ2Free,
            VCTag::I2t => IsoType::Z2Index2OverZ2Free,
            VCTag::I3 => IsoType::TrSemidirect,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IsoType::Z2xZ => "Z2xZ",
            IsoType::Z2xZIndex2 => "Z2xZ-index2",
            IsoType::Z2xZ2Free => "Z2xZ2free",
            IsoType::Z2Index2OverZ2Free => "Z2-index2-over-Z2free",
            IsoType::TrSemidirect => "TrSemidirect",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    /// The structure is exhibited exactly.
    Certified,
    /// Witnesses come from searches limited by the bounds.
    Bounded,
}

/// One identity checked by exact matrix arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub lhs: String,
    pub rhs: String,
    pub verified: bool,
}

impl RelationCheck {
    fn new(lhs: impl Into<String>, rhs: impl Into<String>, verified: bool) -> Self {
        RelationCheck { lhs: lhs.into(), rhs: rhs.into(), verified }
    }
}

/// Structure of the commensurator of `<A>`.
///
/// Witnesses are given in the frame where the (power-normalized) generator
/// takes its canonical form `canonical = P A^k P^{-1}`; `conjugator` is `P`.
/// For the semisimple classes the frame is the original one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerDescriptor {
    #[serde(rename = "class")]
    pub class_tag: VCTag,
    pub iso_type: IsoType,
    #[serde(rename = "witnesses")]
    pub witness_generators: Vec<IntMatrix>,
    #[serde(rename = "relations")]
    pub relations_checked: Vec<RelationCheck>,
    pub bounds_used: SearchBound,
    pub completeness: Completeness,
    pub normalization_power: u32,
    pub conjugator: IntMatrix,
    pub canonical: IntMatrix,
    /// Lower bound on the free rank of the centralizer, from independent witnesses.
    pub free_rank_lower_bound: usize,
    /// Non-identity finite-order witnesses.
    pub observed_torsion: Vec<IntMatrix>,
    /// An element inverting the canonical generator, when one was found.
    pub inverting_witness: Option<IntMatrix>,
    pub notes: Vec<String>,
}

impl NormalizerDescriptor {
    /// Witnesses transported back to the frame of the input matrix.
    pub fn witnesses_in_input_frame(&self) -> Result<Vec<IntMatrix>> {
        let p_inv = self.conjugator.inverse_unimodular()?;
        Ok(self.witness_generators.iter().map(|w| &(&p_inv * w) * &self.conjugator).collect())
    }

    pub fn all_relations_verified(&self) -> bool {
        self.relations_checked.iter().all(|r| r.verified)
    }
}

fn conj(g: &IntMatrix, x: &IntMatrix) -> IntMatrix {
    let g_inv = g.inverse_unimodular().expect("witnesses are unimodular");
    &(g * x) * &g_inv
}

fn group_commutator(g: &IntMatrix, h: &IntMatrix) -> IntMatrix {
    let gi = g.inverse_unimodular().expect("unimodular");
    let hi = h.inverse_unimodular().expect("unimodular");
    &(&(&gi * &hi) * g) * h
}

/// The two involutions acting on `x = E12(1)`, `y = E23(1)`, `z = E13(1)`:
/// the first inverts `x, y` and fixes `z`, the second inverts `x, z` and
/// fixes `y`.
pub fn tr3_involutions() -> [IntMatrix; 2] {
    [IntMatrix::lit([[-1, 0, 0], [0, 1, 0], [0, 0, -1]]), IntMatrix::lit([[1, 0, 0], [0, -1, 0], [0, 0, -1]])]
}

/// The six action identities and the structural relations of the
/// semidirect product, each checked exactly.
pub fn semidirect_relations() -> Vec<RelationCheck> {
    let (x, y, z) = (e12(1), e23(1), e13(1));
    let inv = |m: &IntMatrix| m.inverse_unimodular().expect("unimodular");
    let [d10, d01] = tr3_involutions();
    let id = IntMatrix::identity(3);
    let gens = [("x", &x), ("y", &y), ("z", &z)];
    let mut out = Vec::new();
    for (label, d, action) in [("(1,0)", &d10, [true, true, false]), ("(0,1)", &d01, [true, false, true])] {
        for ((name, g), inverted) in gens.iter().zip(action) {
            let image = conj(d, g);
            let (rhs, expected) = if inverted { (format!("{name}⁻¹"), inv(g)) } else { (name.to_string(), (*g).clone()) };
            out.push(RelationCheck::new(format!("φ({label})({name})"), rhs, image == expected));
        }
    }
    out.push(RelationCheck::new("[x,y]", "z", group_commutator(&x, &y) == z));
    out.push(RelationCheck::new("[x,z]", "e", group_commutator(&x, &z) == id));
    out.push(RelationCheck::new("[y,z]", "e", group_commutator(&y, &z) == id));
    out.push(RelationCheck::new("φ((1,0))²", "e", (&d10 * &d10) == id));
    out.push(RelationCheck::new("φ((0,1))²", "e", (&d01 * &d01) == id));
    out.push(RelationCheck::new("φ((1,0))φ((0,1))", "φ((0,1))φ((1,0))", (&d10 * &d01) == (&d01 * &d10)));
    out
}

fn membership_checks(witnesses: &[IntMatrix], h: &CyclicSubgroup, bound: SearchBound) -> Result<Vec<RelationCheck>> {
    let mut out = Vec::new();
    for (i, w) in witnesses.iter().enumerate() {
        let verdict = in_commensurator(w, h, bound)?;
        let (lhs, rhs, ok) = match verdict {
            Commensurability::Yes { n, m, .. } => (format!("w{i}⁻¹ A^{n} w{i}"), format!("A^{m}"), true),
            _ => (format!("w{i}⁻¹ A^n w{i}"), "A^m".to_string(), false),
        };
        out.push(RelationCheck::new(lhs, rhs, ok));
    }
    Ok(out)
}

/// Commensurator structure of `<A>`, with witnesses and exact relation
/// checks.
pub fn normalizer_descriptor(a: &IntMatrix, bound: SearchBound) -> Result<NormalizerDescriptor> {
    bound.validate()?;
    let h = CyclicSubgroup::new(a.clone())?;
    let tag = h.vc_class.tag;
    let (k, ak) = power_normalize(a)?;
    let mut notes = Vec::new();
    let mut relations = Vec::new();

    let (conjugator, canonical, witnesses, free_rank, torsion, completeness) = match tag {
        VCTag::I1 | VCTag::I2 | VCTag::I1t => {
            let sc = structured_centralizer(a, bound)?;
            for (i, w) in sc.all().iter().enumerate() {
                relations.push(RelationCheck::new(format!("w{i} A"), format!("A w{i}"), w.commutes_with(a)));
            }
            if tag != VCTag::I1t && sc.torsion.is_empty() {
                notes.push(format!(
                    "{} has a Z2 factor, but no non-identity finite-order element of SL(3,Z) commuting with A \
                     was found within the bounds; -I has determinant -1",
                    IsoType::for_class(tag).as_str()
                ));
            }
            notes.push(format!("free rank >= {} (relations searched up to exponent {})", sc.free.len(), bound.power_bound));
            (IntMatrix::identity(3), a.clone(), sc.all(), sc.free.len(), sc.torsion, Completeness::Bounded)
        }
        VCTag::I2t => {
            let (p, t) = conjugate_unipotent(&ak)?;
            let (ta, tb) = (t.get(0, 1).clone(), t.get(1, 2).clone());
            let g = ta.gcd(&tb);
            let (x, y): (BigInt, BigInt) = (&ta / &g, &tb / &g);
            let mut u = IntMatrix::identity(3);
            u.set(0, 1, x.clone());
            u.set(1, 2, y.clone());
            let z = e13(1);
            relations.push(RelationCheck::new("u T", "T u", u.commutes_with(&t)));
            relations.push(RelationCheck::new("z T", "T z", z.commutes_with(&t)));
            relations.push(RelationCheck::new("u z", "z u", u.commutes_with(&z)));
            relations.push(RelationCheck::new(format!("a·y - b·x for u (a={ta}, b={tb})"), "0", &ta * &y - &tb * &x == BigInt::from(0)));
            (p, t, vec![u, z], 2, Vec::new(), Completeness::Certified)
        }
        VCTag::I3 => {
            let (p, t) = conjugate_unipotent(&ak)?;
            relations.extend(semidirect_relations());
            let [d10, d01] = tr3_involutions();
            (p, t, vec![e12(1), e23(1), e13(1), d10, d01], 0, Vec::new(), Completeness::Certified)
        }
    };

    let inverting_witness = if tag.is_unipotent_class() {
        let found = inverting_enum(&canonical, bound)?.into_iter().next();
        if let Some(g) = &found {
            let t_inv = canonical.inverse_unimodular()?;
            relations.push(RelationCheck::new("g⁻¹ T g", "T⁻¹", &(&g.inverse_unimodular()? * &canonical) * g == t_inv));
        }
        found
    } else {
        let found = inverting_enum(a, bound)?;
        if tag != VCTag::I1t {
            relations.push(RelationCheck::new(
                format!("#{{g : g⁻¹ A g = A⁻¹, |g_ij| <= {}}}", bound.entry_bound),
                "0",
                found.is_empty(),
            ));
        }
        found.into_iter().next()
    };

    // every witness must lie in the commensurator of the canonical generator
    let canonical_h = CyclicSubgroup::new(canonical.clone())?;
    let mut members = witnesses.clone();
    members.extend(inverting_witness.iter().cloned());
    relations.extend(membership_checks(&members, &canonical_h, bound)?);

    Ok(NormalizerDescriptor {
        class_tag: tag,
        iso_type: IsoType::for_class(tag),
        witness_generators: witnesses,
        relations_checked: relations,
        bounds_used: bound,
        completeness,
        normalization_power: k,
        conjugator,
        canonical,
        free_rank_lower_bound: free_rank,
        observed_torsion: torsion,
        inverting_witness,
        notes,
    })
}

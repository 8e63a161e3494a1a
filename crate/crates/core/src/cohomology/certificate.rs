use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::chain::mapping_torus_betti;
use super::heisenberg::{Gen, HeisenbergAutomorphism};
use crate::error::Result;
use crate::exact::IntMatrix;

/// Lower bound certified when the top class survives.
pub const CERTIFIED_LOWER_BOUND: u32 = 4;
/// Dimension of the model built from the mapping cylinder.
pub const CONSTRUCTED_UPPER_BOUND: u32 = 4;
pub const UPPER_BOUND_SOURCE: &str = "mapping cylinder construction";

/// `(M2, eps)`: the action on `<x,y>` modulo the center and the exponent sign
/// of `φ(z)`.
pub fn induced_h1_action(phi: &HeisenbergAutomorphism) -> (IntMatrix, i64) {
    let (px, py, pz) = (phi.image_of(Gen::X), phi.image_of(Gen::Y), phi.image_of(Gen::Z));
    (IntMatrix::lit([[px.a, py.a], [px.b, py.b]]), pz.c)
}

/// Scalar by which `phi` acts on the one-dimensional class
/// `Λ²<x,y>* ⊗ z*`: `det(M2) · eps`.
pub fn top_class_action(phi: &HeisenbergAutomorphism) -> i64 {
    let (m2, eps) = induced_h1_action(phi);
    m2.det().to_i64().expect("unimodular 2x2 determinant") * eps
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarEntry {
    pub generator: String,
    pub value: i64,
}

/// One link of the argument. `checked` is true when the premise was
/// verified by computation here, false when it is a structural input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferenceStep {
    pub claim: String,
    pub premise: String,
    pub checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H4Certificate {
    /// Dimension of the invariants of the top class, 0 or 1.
    pub invariant_dim: u32,
    pub scalars: Vec<ScalarEntry>,
    /// Certified lower bound on the dimension, when there is one.
    pub lower_bound: Option<u32>,
    pub upper_bound: u32,
    pub upper_bound_source: String,
    pub conclusion: String,
    /// Betti numbers of the Heisenberg nilmanifold, the independent witness
    /// that the top class is one-dimensional.
    pub heisenberg_betti: (usize, usize, usize, usize),
    pub steps: Vec<InferenceStep>,
}

impl H4Certificate {
    /// The dimension, when both bounds agree.
    pub fn dimension(&self) -> Option<u32> {
        (self.lower_bound == Some(self.upper_bound)).then_some(self.upper_bound)
    }
}

/// Certificate from already-validated automorphisms.
pub fn h4_certificate(gens: &[HeisenbergAutomorphism]) -> Result<H4Certificate> {
    let scalars =
        gens.iter().map(|g| ScalarEntry { generator: g.name.clone(), value: top_class_action(g) }).collect();
    h4_certificate_from_scalars(scalars)
}

/// Certificate from the scalars of the generators on the top class. Useful
/// for probing the branch where some generator acts by `-1`, which no
/// automorphism of `Tr(3,Z)` does.
pub fn h4_certificate_from_scalars(scalars: Vec<ScalarEntry>) -> Result<H4Certificate> {
    let betti = mapping_torus_betti(&IntMatrix::lit([[1, 1], [0, 1]]))?;
    let top_one_dim = betti.3 == 1;
    let fixed = scalars.iter().all(|s| s.value == 1);
    let invariant_dim = u32::from(fixed && top_one_dim);

    let described: Vec<String> = scalars.iter().map(|s| format!("{} ↦ {:+}", s.generator, s.value)).collect();
    let mut steps = vec![
        InferenceStep {
            claim: "H³(Tr(3,Z);Q) is one-dimensional, spanned by Λ²<x,y>* ⊗ z*".into(),
            premise: format!(
                "Betti numbers of the mapping torus of [[1,1],[0,1]] are {betti:?}, so b3 = {}",
                betti.3
            ),
            checked: top_one_dim,
        },
        InferenceStep {
            claim: format!("the finite group fixes the top class: invariant dimension {invariant_dim}"),
            premise: if described.is_empty() {
                "no generators (trivial group)".into()
            } else {
                format!("generator scalars det(M2)·eps: {}", described.join(", "))
            },
            checked: true,
        },
    ];
    let lower_bound = if invariant_dim == 1 {
        steps.push(InferenceStep {
            claim: "H³ of the quotient by the commensurator of an I3 class is Q".into(),
            premise: "rational cohomology of a finite extension is the invariant part".into(),
            checked: false,
        });
        steps.push(InferenceStep {
            claim: "H⁴ of the quotient for the family of virtually cyclic subgroups is Q".into(),
            premise: "the exact sequence in degree 3 to 4 with a contractible proper quotient".into(),
            checked: false,
        });
        steps.push(InferenceStep {
            claim: format!("gd >= {CERTIFIED_LOWER_BOUND}"),
            premise: "a model of dimension below 4 has vanishing rational H⁴".into(),
            checked: true,
        });
        Some(CERTIFIED_LOWER_BOUND)
    } else {
        None
    };
    steps.push(InferenceStep {
        claim: format!("gd <= {CONSTRUCTED_UPPER_BOUND}"),
        premise: UPPER_BOUND_SOURCE.into(),
        checked: false,
    });
    let conclusion = match lower_bound {
        Some(l) if l == CONSTRUCTED_UPPER_BOUND => format!("gd = {l}"),
        _ => format!("no lower bound certified; gd <= {CONSTRUCTED_UPPER_BOUND}"),
    };
    Ok(H4Certificate {
        invariant_dim,
        scalars,
        lower_bound,
        upper_bound: CONSTRUCTED_UPPER_BOUND,
        upper_bound_source: UPPER_BOUND_SOURCE.into(),
        conclusion,
        heisenberg_betti: betti,
        steps,
    })
}

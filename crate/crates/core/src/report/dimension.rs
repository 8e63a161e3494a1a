use serde::{Deserialize, Serialize};

use super::ktheory::model_pair;
use crate::vcyc::VCTag;

/// Dimension bounds attached to one class of commensurators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassBounds {
    pub label: String,
    /// Bound on the proper geometric dimension of `N[H]`.
    pub proper: u32,
    /// Bound on the geometric dimension of `N[H]` for the family `F[H]`.
    pub family: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionCertificate {
    pub classes: Vec<ClassBounds>,
    /// Bound on the proper geometric dimension of the ambient group.
    pub ambient: u32,
    /// Least `d` with `proper <= d - 1`, `family <= d` for every class and
    /// `ambient <= d`.
    pub d: u32,
    /// Constraints that are tight at `d`.
    pub binding: Vec<String>,
}

impl DimensionCertificate {
    pub fn satisfied_by(&self, d: u32) -> bool {
        satisfies(&self.classes, self.ambient, d)
    }
}

fn satisfies(classes: &[ClassBounds], ambient: u32, d: u32) -> bool {
    ambient <= d && classes.iter().all(|c| c.proper < d && c.family <= d)
}

/// The values for SL(3,Z): one row per class, with the model dimensions
/// of the commensurators, and ambient bound 3.
pub fn standard_table() -> (Vec<ClassBounds>, u32) {
    let rows = VCTag::ALL
        .into_iter()
        .map(|t| {
            let (family, proper) = model_pair(t);
            ClassBounds { label: t.to_string(), proper, family }
        })
        .collect();
    (rows, 3)
}

pub fn dimension_certificate(classes: &[ClassBounds], ambient: u32) -> DimensionCertificate {
    let d = classes.iter().map(|c| (c.proper + 1).max(c.family)).chain([ambient]).max().unwrap_or(ambient);
    let mut binding = Vec::new();
    if ambient == d {
        binding.push(format!("ambient proper dimension {ambient} <= d"));
    }
    for c in classes {
        if c.proper + 1 == d {
            binding.push(format!("{}: proper dimension {} <= d - 1", c.label, c.proper));
        }
        if c.family == d {
            binding.push(format!("{}: family dimension {} <= d", c.label, c.family));
        }
    }
    debug_assert!(satisfies(classes, ambient, d) && (d == 0 || !satisfies(classes, ambient, d - 1)));
    DimensionCertificate { classes: classes.to_vec(), ambient, d, binding }
}

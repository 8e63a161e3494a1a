//! Commensurability of cyclic subgroups and commensurator structure.

mod centralizer;
mod decide;
mod normalizer;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::vcyc::{classify, VCClass};

pub use centralizer::{
    centralizer_enum, free_rank_evidence, independent_units, inverting_enum, structured_centralizer,
    CentralizerGenerators, RankEvidence,
};
pub use decide::{
    bounded_power_search, commensurable, in_commensurator, witness_is_valid, Commensurability, Method, Refutation,
};
pub use normalizer::{
    normalizer_descriptor, semidirect_relations, tr3_involutions, Completeness, IsoType, NormalizerDescriptor,
    RelationCheck,
};

/// Limits for the bounded searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBound {
    /// Largest `|n|`, `|m|` tried in power equations `A^n = B^m`.
    pub power_bound: u32,
    /// Largest absolute entry (or coefficient) in matrix enumerations.
    pub entry_bound: u32,
}

impl Default for SearchBound {
    fn default() -> Self {
        SearchBound { power_bound: 12, entry_bound: 3 }
    }
}

impl SearchBound {
    pub fn new(power_bound: u32, entry_bound: u32) -> Result<Self> {
        let b = SearchBound { power_bound, entry_bound };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.power_bound == 0 || self.entry_bound == 0 {
            return Err(Error::InvalidBound(format!(
                "power_bound={} entry_bound={} must both be positive",
                self.power_bound, self.entry_bound
            )));
        }
        Ok(())
    }
}

/// `H = <A>` with `A` of infinite order in SL(3,Z).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSubgroup {
    pub generator: IntMatrix,
    pub vc_class: VCClass,
}

impl CyclicSubgroup {
    pub fn new(generator: IntMatrix) -> Result<Self> {
        let vc_class = classify(&generator)?;
        Ok(CyclicSubgroup { generator, vc_class })
    }
}

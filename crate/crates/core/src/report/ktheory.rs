use serde::{Deserialize, Serialize};

use crate::commensurator::{commensurable, Commensurability, IsoType, SearchBound};
use crate::exact::IntMatrix;
use crate::vcyc::{classify, VCTag};

/// `(dim E_F N[H], dim E N[H])` for the models `{*}`, `R`, `R^2`, `R^3`.
pub fn model_pair(tag: VCTag) -> (u32, u32) {
    match tag {
        VCTag::I1 | VCTag::I1t => (0, 1),
        VCTag::I2 | VCTag::I2t => (1, 2),
        VCTag::I3 => (2, 3),
    }
}

pub fn model_name(dim: u32) -> String {
    match dim {
        0 => "{∗}".into(),
        1 => "R".into(),
        2 => "R²".into(),
        3 => "R³".into(),
        d => format!("R^{d}"),
    }
}

pub const FIXED_SUMMAND: &str = "H_n^Γ(E̲Γ; K_R)";
pub const SAMPLE_NOTE: &str = "The index set of commensurability classes is infinite; this report covers only \
the sampled representatives and makes no completeness claim.";
pub const I3_NOTE: &str = "I3 contains exactly one element: every I3 representative is conjugate to a subgroup \
commensurable with <E13(1)>.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EntryResult {
    Classified { class: VCTag, iso_type: IsoType, model_pair: (u32, u32), group: usize },
    Error { kind: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonEntry {
    pub index: usize,
    pub matrix: IntMatrix,
    #[serde(flatten)]
    pub result: EntryResult,
}

/// `A_i^n = A_j^m`, the reason two inputs share a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeWitness {
    pub i: usize,
    pub j: usize,
    pub n: i64,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandGroup {
    pub id: usize,
    pub class: VCTag,
    pub iso_type: IsoType,
    pub members: Vec<usize>,
    pub model_pair: (u32, u32),
    pub summand: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTheorySkeleton {
    pub header: String,
    pub fixed_summand: String,
    pub entries: Vec<SkeletonEntry>,
    pub groups: Vec<SummandGroup>,
    pub merges: Vec<MergeWitness>,
    /// Same-class pairs whose commensurability was left undecided.
    pub unresolved_pairs: Vec<(usize, usize)>,
    pub notes: Vec<String>,
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = i;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// Classifies each input (errors reported per item), merges witnessed
/// commensurable inputs, and emits one summand per group.
pub fn ktheory_skeleton(matrices: &[IntMatrix], bound: SearchBound) -> KTheorySkeleton {
    let classes: Vec<_> = matrices.iter().map(classify).collect();
    let n = matrices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut merges = Vec::new();
    let mut unresolved = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (Ok(ci), Ok(cj)) = (&classes[i], &classes[j]) else { continue };
            if ci.tag != cj.tag || find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            match commensurable(&matrices[i], &matrices[j], bound) {
                Ok(Commensurability::Yes { n, m, .. }) => {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[rj.max(ri)] = ri.min(rj);
                    merges.push(MergeWitness { i, j, n, m });
                }
                Ok(Commensurability::Unknown { .. }) => unresolved.push((i, j)),
                Ok(Commensurability::No { .. }) | Err(_) => {}
            }
        }
    }

    let mut groups: Vec<SummandGroup> = Vec::new();
    let mut group_of_root = std::collections::HashMap::new();
    let mut entries = Vec::with_capacity(n);
    for (i, c) in classes.iter().enumerate() {
        let result = match c {
            Ok(c) => {
                let root = find(&mut parent, i);
                let pair = model_pair(c.tag);
                let id = *group_of_root.entry(root).or_insert_with(|| {
                    let id = groups.len();
                    groups.push(SummandGroup {
                        id,
                        class: c.tag,
                        iso_type: IsoType::for_class(c.tag),
                        members: Vec::new(),
                        model_pair: pair,
                        summand: format!(
                            "H_n^{{N[H]}}({}, {}; K_R)",
                            model_name(pair.0),
                            model_name(pair.1)
                        ),
                    });
                    id
                });
                groups[id].members.push(i);
                EntryResult::Classified { class: c.tag, iso_type: IsoType::for_class(c.tag), model_pair: pair, group: id }
            }
            Err(e) => EntryResult::Error { kind: e.kind().into(), message: e.to_string() },
        };
        entries.push(SkeletonEntry { index: i, matrix: matrices[i].clone(), result });
    }

    let mut notes = Vec::new();
    if groups.iter().any(|g| g.class == VCTag::I3) {
        notes.push(I3_NOTE.into());
    }
    KTheorySkeleton {
        header: SAMPLE_NOTE.into(),
        fixed_summand: FIXED_SUMMAND.into(),
        entries,
        groups,
        merges,
        unresolved_pairs: unresolved,
        notes,
    }
}

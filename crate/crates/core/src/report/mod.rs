//! Report generators: the K-theory summand skeleton and the dimension
//! certificate.

mod dimension;
mod ktheory;

pub use dimension::{dimension_certificate, standard_table, ClassBounds, DimensionCertificate};
pub use ktheory::{
    ktheory_skeleton, model_name, model_pair, EntryResult, KTheorySkeleton, MergeWitness, SkeletonEntry,
    SummandGroup, FIXED_SUMMAND, I3_NOTE, SAMPLE_NOTE,
};

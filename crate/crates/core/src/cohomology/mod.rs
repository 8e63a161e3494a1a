//! Rational cohomology of the top class of `Tr(3,Z)` under the `Z2 ⊕ Z2`
//! action, the resulting dimension certificate, and rational chain
//! complexes for the mapping-torus cross-check.

mod certificate;
mod chain;
mod heisenberg;

pub use certificate::{
    h4_certificate, h4_certificate_from_scalars, induced_h1_action, top_class_action, H4Certificate, InferenceStep,
    ScalarEntry, CERTIFIED_LOWER_BOUND, CONSTRUCTED_UPPER_BOUND, UPPER_BOUND_SOURCE,
};
pub use chain::{mapping_torus_betti, mapping_torus_complex, ChainComplexQ};
pub use heisenberg::{
    heisenberg_normal_form, involution_generators, Gen, HeisElem, HeisenbergAutomorphism, HeisenbergWord, Letter,
};

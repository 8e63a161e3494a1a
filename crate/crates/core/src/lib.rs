//! Infinite virtually cyclic subgroups of SL(3,Z).
//!
//! The crate classifies infinite-order elements of SL(3,Z) into the five
//! commensurability classes, decides commensurability of cyclic subgroups,
//! describes their commensurators, checks integral characteristic and
//! unipotent Hirsch length of matrix groups, and produces the rational
//! cohomology certificate showing that the classifying space for the family
//! of virtually cyclic subgroups of SL(3,Z) has minimal dimension 4.
//!
//! All arithmetic is exact (`num-bigint` / `num-rational`).

pub mod cli;
pub mod cohomology;
pub mod commensurator;
pub mod error;
pub mod exact;
pub mod hypotheses;
pub mod report;
pub mod spectra;
pub mod vcyc;

pub use error::{Error, Result};
pub use exact::{CharPoly, IntMatrix, RatMatrix};

//! Classification of infinite-order elements of SL(3,Z) and the unipotent
//! tools it relies on.

mod classify;
mod hirsch;
mod unipotent;

pub use classify::{classify, require_sl3, VCClass, VCTag};
pub use hirsch::{hirsch_length_unipotent, lie_closure_dim};
pub use unipotent::{
    conjugate_unipotent, exp_nilpotent, is_center_conjugable, is_central_form, is_unipotent, is_unipotent_rat,
    log_unipotent, nilpotent_log, NilpotentLog,
};

//! Preservation, invariant relations and essential tuples.

mod essential;
mod fn_lemma;
mod invariants;
mod preserve;

pub use essential::{
    check_double_c_property, essential_tuples, is_essential, project_out, rho_tilde, DoubleC, EssentialTuple,
    RELATION_SCAN_CAP,
};
pub use fn_lemma::{verify_fn_lemma, FnLemmaReport, FnLevel};
pub use invariants::{enumerate_invariants, InvariantSet};
pub use preserve::{preserves, Preservation, PreservationCounterexample};

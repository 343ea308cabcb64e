//! Named operations and one-call verification suites.

mod named;
mod verify;

pub use named::{algebra_of, algebra_rs, algebra_s, algebra_st, named, parse_named_algebra, NamedOp};
pub use verify::{
    gap_algebra_check, has_ac_bc_coordinates, has_c_coordinate, random_invariant, verify_all, verify_lemma, Check,
    GapReport, LemmaId, LemmaReport, Status, VerifyParams, Witness, ALL_LEMMAS,
};

//! Term operations: free-algebra generation, term search and structural
//! predicates.

mod envelope;
mod free;
mod predicates;
mod search;

pub use envelope::{clone_envelope, Envelope};
pub use free::{free_algebra, validate_witnesses, FreeAlgebra, FreeElement};
pub use predicates::{
    classify_coordinates, is_alpha_beta_projective, is_generalized_hubie_pol, is_hubie_pol, pinned_image,
    projective_coordinate, render_report, table_projective_coordinate, CoordinateClass, CoordinateReport,
    OpProjectivity, ProjectivityReport, CLASSIFY_CAP,
};
pub use search::{
    check_zhuk_condition, find_lemma_terms, find_term_matching, LemmaTarget, PartialSpec, SearchVerdict, ZhukRegime,
    ZhukReport, ZHUK_FIRST, ZHUK_SECOND,
};

//! Adversary calculus: Σ-families, composability, reachability closure,
//! collapsibility, switchability and generating-set sizes.

mod closure;
mod family;
mod power;

pub use closure::{adversary_closure, AdversaryClosure, Derivation, DerivationStep, Step};
pub use family::{
    collapsing_sources, f_composable, image, sigma_family, switch_tuples, switches, Adversary, AdversaryFamily,
    ADVERSARY_CAP,
};
pub use power::{
    generates_power, is_k_collapsible_at, is_k_switchable_at, min_generating_size, CollapseVerdict, GrowthRecord,
    PowerGeneration, POWER_CAP,
};

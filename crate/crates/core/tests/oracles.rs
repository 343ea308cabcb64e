//! Engines against brute force on small exhaustive instances.

mod common;

use clonelab::adversary::{min_generating_size, Adversary, AdversaryFamily};
use clonelab::gallery::{algebra_of, algebra_rs, algebra_s, algebra_st, named, NamedOp};
use clonelab::Budget;

#[test]
fn adversary_closure_matches_naive_on_sigma_sources() {
    for alg in [algebra_s(), algebra_st(), algebra_rs()] {
        let n = common::sigma_grid_agrees(&alg, 3).unwrap();
        assert_eq!(n, 6 * 7);
    }
}

#[test]
fn adversary_closure_matches_naive_on_asymmetric_sources() {
    let rs = algebra_rs();
    let d = rs.domain().clone();
    let cases = [
        vec!["a,abc,b", "abc,b,a"],
        vec!["ab,c,abc", "b,abc,a", "abc,a,c"],
        vec!["a,b", "b,abc"],
        vec!["abc,a", "b,abc"],
        vec!["ac,bc,abc", "bc,abc,ac"],
    ];
    for alg in [rs, algebra_st(), algebra_s()] {
        for case in &cases {
            let members: Vec<Adversary> = case.iter().map(|s| Adversary::parse(&d, s).unwrap()).collect();
            let fam = AdversaryFamily::new(members[0].len(), members).unwrap();
            common::compare_adversary_closure(&alg, &fam).unwrap();
        }
    }
}

#[test]
fn power_generation_matches_naive() {
    common::power_generation_agrees(&algebra_s(), 200, 7).unwrap();
    common::power_generation_agrees(&algebra_st(), 60, 11).unwrap();
    common::power_generation_agrees(&algebra_rs(), 30, 13).unwrap();
}

#[test]
fn preservation_matches_naive() {
    for op in [NamedOp::S, NamedOp::R, NamedOp::T, NamedOp::FA(3), NamedOp::HFB(2)] {
        let n = common::preservation_agrees(&named(op).unwrap()).unwrap();
        assert_eq!(n, 7 + 511);
    }
}

#[test]
fn semilattice_generating_sets() {
    let s = algebra_of(&[NamedOp::S]).unwrap();
    for (m, want) in [(2, 4), (3, 8)] {
        assert_eq!(common::semilattice_mingen_oracle(&s, m), want);
        let g = min_generating_size(&s, m, &Budget::default()).unwrap();
        assert_eq!(g.value(), Some(want));
    }
}

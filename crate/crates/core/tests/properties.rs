mod common;

use clonelab::adversary::{
    collapsing_sources, is_k_collapsible_at, sigma_family, switch_tuples, switches, Adversary, AdversaryFamily,
};
use clonelab::algebra::{Algebra, Domain, Elem, Operation};
use clonelab::clone::is_hubie_pol;
use clonelab::{Budget, Outcome};
use proptest::prelude::*;

fn binary_op(values: Vec<Elem>, idempotent: bool) -> Operation {
    let mut table = values;
    if idempotent {
        for e in 0..3 {
            table[e * 3 + e] = e as Elem;
        }
    }
    Operation::from_table("g", 3, 2, table).unwrap()
}

fn algebra(ops: Vec<Operation>) -> Algebra {
    Algebra::new("rand", Domain::default(), ops).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_idempotent_closure_matches_naive(values in prop::collection::vec(0u8..3, 9), m in 1usize..=3) {
        let alg = algebra(vec![binary_op(values, true)]);
        let d = Domain::default();
        for k in 0..m {
            for src in 1..=7u8 {
                let fam = collapsing_sources(&d, m, k, src).unwrap();
                prop_assert_eq!(common::compare_adversary_closure(&alg, &fam), Ok(()));
            }
        }
    }

    #[test]
    fn random_sources_match_naive(
        values in prop::collection::vec(0u8..3, 9),
        raw in prop::collection::vec(prop::collection::vec(1u8..8, 3), 1..4),
    ) {
        let alg = algebra(vec![binary_op(values, false)]);
        let members: Vec<Adversary> = raw.into_iter().map(|c| Adversary::new(c).unwrap()).collect();
        let fam = AdversaryFamily::new(3, members).unwrap();
        prop_assert_eq!(common::compare_adversary_closure(&alg, &fam), Ok(()));
    }

    #[test]
    fn sigma_cardinality(m in 1usize..=10, k in 0usize..=10, x in 0u8..3) {
        prop_assume!(k <= m);
        let fam = sigma_family(&Domain::default(), m, k, x).unwrap();
        prop_assert_eq!(fam.len(), binom(m, k));
        for a in &fam.members {
            prop_assert_eq!(a.coords().iter().filter(|&&c| c == 7).count(), k);
        }
    }

    #[test]
    fn collapsibility_is_monotone(values in prop::collection::vec(0u8..3, 9), m in 2usize..=4, src in 1u8..8) {
        let alg = algebra(vec![binary_op(values, true)]);
        let b = Budget::default();
        for k in 0..m - 1 {
            let here = is_k_collapsible_at(&alg, m, k, src, &b).unwrap().outcome;
            if here == Outcome::Yes {
                prop_assert_eq!(is_k_collapsible_at(&alg, m, k + 1, src, &b).unwrap().outcome, Outcome::Yes);
                prop_assert_eq!(is_k_collapsible_at(&alg, m, k, 7, &b).unwrap().outcome, Outcome::Yes);
            }
        }
    }

    #[test]
    fn switch_tuples_nest(m in 1usize..=6, k in 0usize..=5) {
        prop_assume!(k < m);
        let small = switch_tuples(3, m, k);
        let big = switch_tuples(3, m, k + 1);
        for t in &small {
            prop_assert!(switches(t) <= k);
            prop_assert!(big.contains(t));
        }
    }

    #[test]
    fn hubie_pol_collapses(values in prop::collection::vec(0u8..3, 9), z in 0u8..3) {
        let f = binary_op(values, false);
        if is_hubie_pol(&f, z) {
            let alg = algebra(vec![f]);
            let v = is_k_collapsible_at(&alg, 2, 1, 1 << z, &Budget::default()).unwrap();
            prop_assert_eq!(v.outcome, Outcome::Yes);
        }
    }

    #[test]
    fn switches_counts_changes(t in prop::collection::vec(0u8..3, 1..8)) {
        let naive = t.windows(2).filter(|w| w[0] != w[1]).count();
        prop_assert_eq!(switches(&t), naive);
    }
}

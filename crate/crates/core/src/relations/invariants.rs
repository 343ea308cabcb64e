//! Invariant relations of a fixed arity, i.e. subuniverses of `A^h`.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{Algebra, Relation};
use crate::bitset::BitSet;
use crate::error::Result;
use crate::subpower::{Closure, PowerAlgebra};
use crate::Budget;

#[derive(Clone, Debug)]
pub struct InvariantSet {
    pub arity: usize,
    /// Nonempty subuniverses ordered by size, then by member list.
    pub relations: Vec<Relation>,
    pub complete: bool,
}

type CacheKey = (usize, Vec<Vec<u8>>, usize);

/// Complete enumerations, keyed by domain size, basis tables and arity.
fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<InvariantSet>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<InvariantSet>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Every nonempty subuniverse of `A^h`, generated as joins of
/// one-generated subuniverses. Complete results are memoised per process.
pub fn enumerate_invariants(alg: &Algebra, h: usize, budget: &Budget) -> Result<InvariantSet> {
    let key: CacheKey = (alg.size(), alg.basis().iter().map(|f| f.table().to_vec()).collect(), h);
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(InvariantSet::clone(hit));
    }
    let set = enumerate_uncached(alg, h, budget)?;
    if set.complete {
        cache().lock().expect("cache lock").insert(key, Arc::new(set.clone()));
    }
    Ok(set)
}

fn enumerate_uncached(alg: &Algebra, h: usize, budget: &Budget) -> Result<InvariantSet> {
    let pa = PowerAlgebra::new(alg, h)?;
    let mut meter = budget.meter();
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut found: Vec<Closure> = Vec::new();
    let mut complete = true;

    let singles: Vec<Closure> = (0..pa.universe() as u32).map(|x| pa.closure(&[x], &mut meter, false)).collect();
    if singles.iter().any(|c| !c.complete) {
        complete = false;
    }
    for c in singles.iter().filter(|c| c.complete) {
        if seen.insert(c.set.clone()) {
            found.push(c.clone());
        }
    }
    let mut next = 0;
    'outer: while next < found.len() {
        let base = found[next].clone();
        next += 1;
        for (y, single) in singles.iter().enumerate() {
            if base.set.contains(y) || single.set.is_subset(&base.set) {
                continue;
            }
            if found.len() >= budget.max_tables || meter.exhausted() {
                complete = false;
                break 'outer;
            }
            let mut join = base.set.clone();
            join.union_with(&single.set);
            if seen.contains(&join) {
                continue;
            }
            let extra: Vec<u32> = single.set.iter().filter(|&x| !base.set.contains(x)).map(|x| x as u32).collect();
            let c = pa.extend(&base, &extra, &mut meter);
            if !c.complete {
                complete = false;
                break 'outer;
            }
            if seen.insert(c.set.clone()) {
                found.push(c);
            }
        }
    }

    let mut sets: Vec<BitSet> = found.into_iter().map(|c| c.set).collect();
    sets.sort_by_cached_key(|s| (s.count(), s.iter().collect::<Vec<_>>()));
    let relations = sets
        .into_iter()
        .enumerate()
        .map(|(i, s)| Relation::from_mask(format!("inv{h}_{i}"), alg.size(), h, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantSet { arity: h, relations, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Domain;
    use crate::gallery::{algebra_rs, algebra_s};
    use crate::relations::preserves;

    #[test]
    fn unary_invariants_of_s() {
        let inv = enumerate_invariants(&algebra_s(), 1, &Budget::default()).unwrap();
        let d = Domain::default();
        let got: Vec<String> = inv.relations.iter().map(|r| r.fmt_braces(&d)).collect();
        assert_eq!(got, vec!["{(a)}", "{(b)}", "{(c)}", "{(a),(c)}", "{(b),(c)}", "{(a),(b),(c)}"]);
        assert!(inv.complete);
    }

    #[test]
    fn binary_invariants_are_preserved() {
        let rs = algebra_rs();
        let inv = enumerate_invariants(&rs, 2, &Budget::default()).unwrap();
        assert!(inv.complete);
        for rho in &inv.relations {
            for f in rs.basis() {
                assert!(preserves(f, rho, &Budget::default()).unwrap().preserved);
            }
        }
    }
}

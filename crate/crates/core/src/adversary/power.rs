//! Collapsibility and switchability verdicts, power generation and
//! minimal generating sets.

use super::closure::{adversary_closure, AdversaryClosure};
use super::family::{collapsing_sources, switch_tuples, AdversaryFamily};
use crate::algebra::{Algebra, Elem};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::subpower::{Closure, PowerAlgebra};
use crate::verdict::Outcome;

/// Largest power `|D|^m` for tuple-level generation.
pub const POWER_CAP: usize = 59049;

/// Universe bound for the exact minimal generating set search.
const EXACT_MINGEN_CAP: usize = 27;
/// Universe bound for computing mandatory tuples.
const MANDATORY_CAP: usize = 729;

#[derive(Clone, Debug)]
pub struct CollapseVerdict {
    pub outcome: Outcome,
    pub sources: AdversaryFamily,
    pub closure: AdversaryClosure,
}

/// k-collapsibility from `source` (a subset mask) at a fixed `m`. A YES
/// verdict carries a derivation that has been replayed step by step.
pub fn is_k_collapsible_at(alg: &Algebra, m: usize, k: usize, source: u8, budget: &Budget) -> Result<CollapseVerdict> {
    let d = alg.domain();
    if source & !d.full_mask() != 0 {
        return Err(Error::invalid("source set outside the domain"));
    }
    let sources = collapsing_sources(d, m, k, source)?;
    let closure = adversary_closure(alg, &sources, budget)?;
    if let Some(der) = &closure.derivation {
        der.replay(alg, &sources)?;
    }
    Ok(CollapseVerdict { outcome: closure.outcome(), sources, closure })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerGeneration {
    pub outcome: Outcome,
    pub closure_size: usize,
    pub universe: usize,
}

fn power(alg: &Algebra, m: usize) -> Result<PowerAlgebra> {
    let universe = crate::algebra::capped_pow(alg.size(), m);
    match universe {
        Some(u) if u <= POWER_CAP && m >= 1 => PowerAlgebra::new(alg, m),
        _ => Err(Error::Cap(format!("{}^{} exceeds the tuple cap {POWER_CAP}", alg.size(), m))),
    }
}

fn encode_all(pa: &PowerAlgebra, alg: &Algebra, m: usize, gens: &[Vec<Elem>]) -> Result<Vec<u32>> {
    gens.iter()
        .map(|g| {
            if g.len() != m {
                return Err(Error::ArityMismatch { expected: m, got: g.len() });
            }
            for &e in g {
                alg.domain().check(e as usize)?;
            }
            Ok(pa.encode(g))
        })
        .collect()
}

/// Does `gens` generate all of `A^m`?
pub fn generates_power(alg: &Algebra, m: usize, gens: &[Vec<Elem>], budget: &Budget) -> Result<PowerGeneration> {
    let pa = power(alg, m)?;
    let ids = encode_all(&pa, alg, m, gens)?;
    let mut meter = budget.meter();
    let c = pa.closure(&ids, &mut meter, true);
    let outcome = if c.is_full() {
        Outcome::Yes
    } else if c.complete {
        Outcome::No
    } else {
        Outcome::Unknown
    };
    Ok(PowerGeneration { outcome, closure_size: c.len(), universe: pa.universe() })
}

/// Tuple-level k-switchability at a fixed `m`.
pub fn is_k_switchable_at(alg: &Algebra, m: usize, k: usize, budget: &Budget) -> Result<PowerGeneration> {
    if m == 0 || k >= m {
        return Err(Error::invalid(format!("need 0 <= k < m, got m={m} k={k}")));
    }
    generates_power(alg, m, &switch_tuples(alg.size(), m, k), budget)
}

/// Size of a smallest generating set of `A^m`, or bounds on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRecord {
    pub m: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// A generating set of size `upper`, in tuple order.
    pub witness: Vec<Vec<Elem>>,
}

impl GrowthRecord {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// Minimal generating-set size of `A^m`. Tuples not generable from the
/// others are mandatory and give the lower bound; a greedy extension gives
/// the upper bound; small powers are settled by exhaustive search.
pub fn min_generating_size(alg: &Algebra, m: usize, budget: &Budget) -> Result<GrowthRecord> {
    let pa = power(alg, m)?;
    let u = pa.universe();
    let mut meter = budget.meter();
    let mut mandatory = Vec::new();
    let mut mandatory_known = u <= MANDATORY_CAP;
    if mandatory_known {
        for x in 0..u as u32 {
            match pa.generable_from_others(x, &mut meter) {
                Some(false) => mandatory.push(x),
                Some(true) => {}
                None => {
                    mandatory_known = false;
                    mandatory.clear();
                    break;
                }
            }
        }
    }
    let lower_base = if mandatory_known { mandatory.len().max(1) } else { 1 };
    // greedy upper bound
    let mut chosen = mandatory.clone();
    let mut cur = pa.closure(&chosen, &mut meter, true);
    while !cur.is_full() {
        if !cur.complete || meter.exhausted() {
            return Ok(GrowthRecord { m, lower: lower_base, upper: u, exact: false, witness: all(&pa) });
        }
        let mut best: Option<(usize, u32, Closure)> = None;
        for x in 0..u as u32 {
            if cur.set.contains(x as usize) {
                continue;
            }
            let next = pa.extend(&cur, &[x], &mut meter);
            if best.as_ref().is_none_or(|(n, _, _)| next.len() > *n) {
                best = Some((next.len(), x, next));
            }
        }
        let (_, x, next) = best.expect("closure not full, so some tuple is missing");
        chosen.push(x);
        cur = next;
    }
    chosen.sort_unstable();
    let upper = chosen.len();
    let mut witness: Vec<Vec<Elem>> = chosen.iter().map(|&x| pa.digits(x).to_vec()).collect();
    if upper == lower_base {
        return Ok(GrowthRecord { m, lower: upper, upper, exact: true, witness });
    }
    if !(mandatory_known && u <= EXACT_MINGEN_CAP) {
        return Ok(GrowthRecord { m, lower: lower_base, upper, exact: false, witness });
    }
    // exhaustive: mandatory plus j extra tuples, smallest j first
    let others: Vec<u32> = (0..u as u32).filter(|x| !mandatory.contains(x)).collect();
    for size in lower_base..upper {
        let extra = size - mandatory.len();
        let mut found = None;
        for_each_combination(others.len(), extra, &mut |pick| {
            let mut g = mandatory.clone();
            g.extend(pick.iter().map(|&i| others[i]));
            if pa.closure(&g, &mut meter, true).is_full() {
                g.sort_unstable();
                found = Some(g);
                return true;
            }
            false
        });
        if let Some(g) = found {
            witness = g.iter().map(|&x| pa.digits(x).to_vec()).collect();
            return Ok(GrowthRecord { m, lower: size, upper: size, exact: true, witness });
        }
        if meter.exhausted() {
            return Ok(GrowthRecord { m, lower: size, upper, exact: false, witness });
        }
    }
    Ok(GrowthRecord { m, lower: upper, upper, exact: true, witness })
}

fn all(pa: &PowerAlgebra) -> Vec<Vec<Elem>> {
    (0..pa.universe() as u32).map(|x| pa.digits(x).to_vec()).collect()
}

/// Calls `f` on each `k`-subset of `0..n` in lexicographic order until it
/// returns true.
fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        if f(&pick) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pick[i] < n - k + i {
                pick[i] += 1;
                for j in i + 1..k {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{algebra_rs, algebra_s, algebra_st};

    #[test]
    fn generation_examples() {
        let s = algebra_s();
        let b = Budget::default();
        let ab: Vec<Vec<Elem>> = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
        assert_eq!(generates_power(&s, 2, &ab, &b).unwrap().outcome, Outcome::Yes);
        let diag: Vec<Vec<Elem>> = vec![vec![0, 0], vec![1, 1], vec![2, 2]];
        let g = generates_power(&s, 2, &diag, &b).unwrap();
        assert_eq!((g.outcome, g.closure_size), (Outcome::No, 3));
        assert!(generates_power(&s, 11, &diag, &b).is_err());
    }

    #[test]
    fn mingen_s() {
        let b = Budget::default();
        let r2 = min_generating_size(&algebra_s(), 2, &b).unwrap();
        assert_eq!((r2.value(), r2.witness.len()), (Some(4), 4));
        assert_eq!(min_generating_size(&algebra_s(), 3, &b).unwrap().value(), Some(8));
        let r1 = min_generating_size(&algebra_rs(), 1, &b).unwrap();
        assert!(r1.exact && r1.lower <= 3);
    }

    #[test]
    fn small_collapsibility() {
        let b = Budget::default();
        let v = is_k_collapsible_at(&algebra_s(), 2, 1, 0b111, &b).unwrap();
        assert_eq!(v.outcome, Outcome::No);
        let v = is_k_collapsible_at(&algebra_st(), 3, 3, 0b001, &b).unwrap();
        assert_eq!(v.outcome, Outcome::Yes);
    }

    #[test]
    fn switchable_trivial() {
        let b = Budget::default();
        assert_eq!(is_k_switchable_at(&algebra_s(), 3, 2, &b).unwrap().outcome, Outcome::Yes);
    }
}

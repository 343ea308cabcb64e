//! Local-interpolation envelope of a clone.
//!
//! An `m`-ary operation `g` lies in the envelope of order `h` when, for
//! every set `I` of at most `h` argument rows, the restriction `g|I` is
//! produced by some term operation, i.e. lies in the subuniverse of `A^I`
//! generated by the restricted projections. This is exactly the set of
//! operations preserving every invariant relation of arity `h`, so it
//! always contains the clone and shrinks toward it as `h` grows. The
//! envelope is enumerated by backtracking over table rows.

use std::collections::HashMap;

use crate::algebra::{capped_pow, decode, Algebra, Elem, TABLE_CAP};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::subpower::PowerAlgebra;
use crate::Budget;

#[derive(Clone, Debug)]
pub struct Envelope {
    pub arity: usize,
    pub order: usize,
    rows: usize,
    tables: Vec<Elem>,
    /// Every member was enumerated.
    pub complete: bool,
}

impl Envelope {
    pub fn len(&self) -> usize {
        self.tables.len() / self.rows.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn table(&self, i: usize) -> &[Elem] {
        &self.tables[i * self.rows..(i + 1) * self.rows]
    }

    pub fn tables(&self) -> impl Iterator<Item = &[Elem]> {
        self.tables.chunks(self.rows.max(1))
    }

    /// Members are stored in lexicographic order.
    pub fn contains(&self, table: &[Elem]) -> bool {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.table(mid).cmp(table) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

struct Constraint {
    /// Earlier rows of the subset, ascending.
    others: Vec<usize>,
    allowed: usize,
}

/// All `m`-ary operations preserving the invariants of arity `h`.
pub fn clone_envelope(alg: &Algebra, m: usize, h: usize, budget: &Budget) -> Result<Envelope> {
    let size = alg.size();
    let rows = capped_pow(size, m).ok_or(Error::TableCap { size, arity: m, cap: TABLE_CAP })?;
    if h == 0 {
        return Err(Error::invalid("envelope order must be positive"));
    }
    let h = h.min(rows);
    let pa = PowerAlgebra::new(alg, h)?;
    let row_tuples: Vec<Vec<Elem>> = (0..rows).map(|r| decode(r, size, m)).collect();
    let mut meter = budget.meter();

    let mut sets: Vec<BitSet> = Vec::new();
    let mut interned: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut by_row: Vec<Vec<Constraint>> = (0..rows).map(|_| Vec::new()).collect();
    let mut subset: Vec<usize> = (0..h).collect();
    loop {
        let mut gens: Vec<u32> = (0..m)
            .map(|i| pa.encode(&subset.iter().map(|&r| row_tuples[r][i]).collect::<Vec<_>>()))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let allowed = match interned.get(&gens) {
            Some(&id) => id,
            None => {
                let c = pa.closure(&gens, &mut meter, false);
                if !c.complete {
                    return Ok(Envelope { arity: m, order: h, rows, tables: Vec::new(), complete: false });
                }
                sets.push(c.set);
                interned.insert(gens, sets.len() - 1);
                sets.len() - 1
            }
        };
        let last = subset[h - 1];
        by_row[last].push(Constraint { others: subset[..h - 1].to_vec(), allowed });
        if !next_subset(&mut subset, rows) {
            break;
        }
    }

    let mut env = Envelope { arity: m, order: h, rows, tables: Vec::new(), complete: true };
    let mut g = vec![0 as Elem; rows];
    let weights: Vec<usize> = (0..h).map(|j| size.pow((h - 1 - j) as u32)).collect();
    let mut ctx = Search { size, rows, by_row: &by_row, sets: &sets, weights: &weights, budget };
    ctx.run(0, &mut g, &mut env, &mut meter);
    Ok(env)
}

struct Search<'a> {
    size: usize,
    rows: usize,
    by_row: &'a [Vec<Constraint>],
    sets: &'a [BitSet],
    weights: &'a [usize],
    budget: &'a Budget,
}

impl Search<'_> {
    fn run(&mut self, r: usize, g: &mut Vec<Elem>, env: &mut Envelope, meter: &mut crate::Meter) {
        if !env.complete {
            return;
        }
        if r == self.rows {
            if env.len() >= self.budget.max_tables {
                env.complete = false;
                return;
            }
            env.tables.extend_from_slice(g);
            return;
        }
        if !meter.charge(1 + self.by_row[r].len() as u64) || (r == 0 && meter.out_of_time()) {
            env.complete = false;
            return;
        }
        'values: for v in 0..self.size as Elem {
            for c in &self.by_row[r] {
                let mut code = 0;
                for (j, &o) in c.others.iter().enumerate() {
                    code += g[o] as usize * self.weights[j];
                }
                code += v as usize * self.weights[c.others.len()];
                if !self.sets[c.allowed].contains(code) {
                    continue 'values;
                }
            }
            g[r] = v;
            self.run(r + 1, g, env, meter);
            if !env.complete {
                return;
            }
        }
    }
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clone::free_algebra;
    use crate::gallery::{algebra_rs, algebra_s, algebra_st};

    #[test]
    fn envelope_contains_clone() {
        let rs = algebra_rs();
        let free = free_algebra(&rs, 2, &Budget::default()).unwrap();
        let env = clone_envelope(&rs, 2, 2, &Budget::default()).unwrap();
        assert!(env.complete);
        for t in free.tables() {
            assert!(env.contains(t));
        }
    }

    #[test]
    fn tight_at_small_arity() {
        let s = algebra_s();
        assert_eq!(clone_envelope(&s, 2, 2, &Budget::default()).unwrap().len(), 3);
        let st = algebra_st();
        assert_eq!(clone_envelope(&st, 2, 3, &Budget::default()).unwrap().len(), 35);
        let rs = algebra_rs();
        assert_eq!(clone_envelope(&rs, 3, 3, &Budget::default()).unwrap().len(), 91);
    }
}

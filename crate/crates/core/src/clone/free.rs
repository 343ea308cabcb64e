//! Term operations of a fixed arity, generated in order of term size.
//!
//! Level `S` holds every table first reached by a term with `S` nodes. A
//! level is produced by applying each basis operation (in basis order) to
//! children whose sizes sum to `S - 1`, compositions in lexicographic order,
//! children in discovery order. Every argument combination is evaluated at
//! most once over the whole run, so the generation stops at a genuine
//! fixpoint once no composition can reach a new size.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::{capped_pow, Algebra, Elem, Operation, Term, TABLE_CAP};
use crate::error::{Error, Result};
use crate::Budget;

/// One term operation with a smallest discovered witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    pub table: Vec<Elem>,
    pub witness: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Origin {
    Var(usize),
    App(usize, Vec<u32>),
}

/// The `m`-generated free algebra, i.e. all `m`-ary term operations
/// reached within budget.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    arity: usize,
    rows: usize,
    tables: Vec<Elem>,
    origins: Vec<Origin>,
    sizes: Vec<u32>,
    index: HashMap<Vec<Elem>, u32>,
    /// Fixpoint reached.
    pub complete: bool,
    /// Argument combinations evaluated.
    pub work: u64,
}

impl FreeAlgebra {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.origins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origins.is_empty()
    }

    pub fn table(&self, i: usize) -> &[Elem] {
        &self.tables[i * self.rows..(i + 1) * self.rows]
    }

    pub fn tables(&self) -> impl Iterator<Item = &[Elem]> {
        self.tables.chunks(self.rows.max(1)).take(self.len())
    }

    pub fn term_size(&self, i: usize) -> usize {
        self.sizes[i] as usize
    }

    pub fn contains(&self, table: &[Elem]) -> bool {
        self.index.contains_key(table)
    }

    pub fn position(&self, table: &[Elem]) -> Option<usize> {
        self.index.get(table).map(|&i| i as usize)
    }

    pub fn witness(&self, i: usize) -> Term {
        match &self.origins[i] {
            Origin::Var(v) => Term::Var(*v),
            Origin::App(op, args) => Term::App(*op, args.iter().map(|&a| self.witness(a as usize)).collect()),
        }
    }

    pub fn element(&self, i: usize) -> FreeElement {
        FreeElement { table: self.table(i).to_vec(), witness: self.witness(i) }
    }

    pub fn elements(&self) -> impl Iterator<Item = FreeElement> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    /// Table as an [`Operation`] named after its witness.
    pub fn operation(&self, alg: &Algebra, i: usize) -> Operation {
        Operation::from_table(self.witness(i).render(alg), alg.size(), self.arity, self.table(i).to_vec())
            .expect("tables are within the cap")
    }
}

/// Result of a generation run that may stop early on a match.
pub(crate) struct Generated {
    pub free: FreeAlgebra,
    pub hit: Option<usize>,
}

/// All `m`-ary term operations, smallest witnesses first.
pub fn free_algebra(alg: &Algebra, m: usize, budget: &Budget) -> Result<FreeAlgebra> {
    Ok(generate(alg, m, budget, &|_| false)?.free)
}

/// Core generator; stops at the first table satisfying `matches`.
pub(crate) fn generate(
    alg: &Algebra,
    m: usize,
    budget: &Budget,
    matches: &(dyn Fn(&[Elem]) -> bool + Sync),
) -> Result<Generated> {
    let size = alg.size();
    let rows = capped_pow(size, m).ok_or(Error::TableCap { size, arity: m, cap: TABLE_CAP })?;
    let mut g = FreeAlgebra {
        arity: m,
        rows,
        tables: Vec::new(),
        origins: Vec::new(),
        sizes: Vec::new(),
        index: HashMap::new(),
        complete: false,
        work: 0,
    };
    let mut meter = budget.meter();
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(), Vec::new()];

    let mut leaves: Vec<(Origin, Vec<Elem>)> = (0..m)
        .map(|i| {
            let stride = size.pow((m - 1 - i) as u32);
            (Origin::Var(i), (0..rows).map(|r| (r / stride % size) as Elem).collect())
        })
        .collect();
    for (oi, f) in alg.basis().iter().enumerate() {
        if f.arity() == 0 {
            leaves.push((Origin::App(oi, vec![]), vec![f.at(0); rows]));
        }
    }
    for (origin, table) in leaves {
        if let Some(id) = g.insert(table, origin, 1) {
            buckets[1].push(id);
            if matches(g.table(id as usize)) {
                return Ok(Generated { free: g, hit: Some(id as usize) });
            }
            if !meter.tables_ok(g.len() + 1) {
                g.work = meter.work;
                return Ok(Generated { free: g, hit: None });
            }
        }
    }

    let max_k = alg.basis().iter().map(Operation::arity).max().unwrap_or(0);
    let mut level = 2usize;
    loop {
        let max_size = buckets.iter().rposition(|b| !b.is_empty()).unwrap_or(0);
        if max_k == 0 || level - 1 > max_k * max_size {
            g.complete = true;
            break;
        }
        buckets.push(Vec::new());
        let mut stopped = false;
        'ops: for (oi, f) in alg.basis().iter().enumerate() {
            let k = f.arity();
            if k == 0 {
                continue;
            }
            for comp in compositions(level - 1, k, max_size) {
                if comp.iter().any(|&s| buckets[s].is_empty()) {
                    continue;
                }
                let rest: u64 = comp[1..].iter().map(|&s| buckets[s].len() as u64).product();
                let n_first = buckets[comp[0]].len();
                // Plan the slices deterministically before evaluating them.
                let mut take = 0;
                while take < n_first && meter.fits(rest) {
                    meter.charge(rest);
                    take += 1;
                }
                let found: Vec<Vec<(Vec<u32>, Vec<Elem>)>> = {
                    let lists: Vec<&[u32]> = comp.iter().map(|&s| buckets[s].as_slice()).collect();
                    lists[0][..take].par_iter().map(|&first| g.eval_slice(f, first, &lists[1..])).collect()
                };
                for cands in found {
                    for (args, table) in cands {
                        if let Some(id) = g.insert(table, Origin::App(oi, args), level as u32) {
                            buckets[level].push(id);
                            if matches(g.table(id as usize)) {
                                g.work = meter.work;
                                return Ok(Generated { free: g, hit: Some(id as usize) });
                            }
                            if !meter.tables_ok(g.len() + 1) {
                                stopped = true;
                                break 'ops;
                            }
                        }
                    }
                }
                if take < n_first || meter.out_of_time() {
                    stopped = true;
                    break 'ops;
                }
            }
        }
        if stopped {
            break;
        }
        level += 1;
    }
    g.work = meter.work;
    Ok(Generated { free: g, hit: None })
}

impl FreeAlgebra {
    fn insert(&mut self, table: Vec<Elem>, origin: Origin, size: u32) -> Option<u32> {
        if self.index.contains_key(&table) {
            return None;
        }
        let id = self.origins.len() as u32;
        self.tables.extend_from_slice(&table);
        self.index.insert(table, id);
        self.origins.push(origin);
        self.sizes.push(size);
        Some(id)
    }

    /// New tables from `f(first, …)` with the remaining arguments ranging
    /// over `lists`, in lexicographic order, locally deduplicated.
    fn eval_slice(&self, f: &Operation, first: u32, lists: &[&[u32]]) -> Vec<(Vec<u32>, Vec<Elem>)> {
        let rows = self.rows;
        let size = f.size();
        let k = f.arity();
        let mut partial: Vec<Vec<usize>> = vec![vec![0; rows]; k];
        for (p, &v) in partial[0].iter_mut().zip(self.table(first as usize)) {
            *p = v as usize;
        }
        let mut args = vec![0u32; k];
        args[0] = first;
        let mut out = Vec::new();
        let mut seen: std::collections::HashSet<Vec<Elem>> = std::collections::HashSet::new();
        let mut result = vec![0 as Elem; rows];
        self.descend(f, size, 1, lists, &mut partial, &mut args, &mut result, &mut seen, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        f: &Operation,
        size: usize,
        pos: usize,
        lists: &[&[u32]],
        partial: &mut Vec<Vec<usize>>,
        args: &mut Vec<u32>,
        result: &mut Vec<Elem>,
        seen: &mut std::collections::HashSet<Vec<Elem>>,
        out: &mut Vec<(Vec<u32>, Vec<Elem>)>,
    ) {
        let k = args.len();
        if pos == k {
            for (r, p) in result.iter_mut().zip(&partial[k - 1]) {
                *r = f.at(*p);
            }
            if !self.index.contains_key(result.as_slice()) && seen.insert(result.clone()) {
                out.push((args.clone(), result.clone()));
            }
            return;
        }
        for &id in lists[pos - 1] {
            args[pos] = id;
            let (done, todo) = partial.split_at_mut(pos);
            let prev = &done[pos - 1];
            for ((slot, &p), &v) in todo[0].iter_mut().zip(prev).zip(self.table(id as usize)) {
                *slot = p * size + v as usize;
            }
            self.descend(f, size, pos + 1, lists, partial, args, result, seen, out);
        }
    }
}

/// Compositions of `total` into `k` positive parts, each at most `max`,
/// in lexicographic order.
fn compositions(total: usize, k: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left < k || left > k * max {
            return;
        }
        for s in 1..=max.min(left) {
            cur.push(s);
            rec(left - s, k - 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, k, max, &mut Vec::new(), &mut out);
    out
}

/// Validate every stored witness against its table.
pub fn validate_witnesses(alg: &Algebra, free: &FreeAlgebra) -> Result<()> {
    for i in 0..free.len() {
        let op = alg.materialize(&free.witness(i), free.arity())?;
        if op.table() != free.table(i) {
            return Err(Error::invalid(format!("witness {} does not reproduce its table", free.witness(i).render(alg))));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{algebra_rs, algebra_s, algebra_st};

    #[test]
    fn compositions_are_ordered() {
        assert_eq!(compositions(3, 2, 5), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(4, 2, 2), vec![vec![2, 2]]);
        assert!(compositions(1, 2, 5).is_empty());
    }

    #[test]
    fn semilattice_clone_sizes() {
        let s = algebra_s();
        let f1 = free_algebra(&s, 1, &Budget::default()).unwrap();
        assert_eq!((f1.len(), f1.complete), (1, true));
        let f2 = free_algebra(&s, 2, &Budget::default()).unwrap();
        assert_eq!((f2.len(), f2.complete), (3, true));
        assert_eq!(f2.witness(2).render(&s), "s(x0,x1)");
        validate_witnesses(&s, &f2).unwrap();
    }

    #[test]
    fn known_free_algebra_sizes() {
        // Sizes obtained independently by an unordered naive closure.
        let rs = algebra_rs();
        assert_eq!(free_algebra(&rs, 2, &Budget::default()).unwrap().len(), 7);
        let f3 = free_algebra(&rs, 3, &Budget::default()).unwrap();
        assert_eq!((f3.len(), f3.complete), (85, true));
        validate_witnesses(&rs, &f3).unwrap();
        let st = algebra_st();
        assert_eq!(free_algebra(&st, 2, &Budget::default()).unwrap().len(), 35);
    }

    #[test]
    fn budget_cuts_are_prefixes() {
        let rs = algebra_rs();
        let full = free_algebra(&rs, 3, &Budget::default()).unwrap();
        let part = free_algebra(&rs, 3, &Budget::default().with_tables(40)).unwrap();
        assert!(!part.complete);
        assert!(part.len() <= 40);
        for t in part.tables() {
            assert!(full.contains(t));
        }
    }
}

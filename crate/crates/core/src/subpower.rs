//! Subuniverses of a finite power `A^n`, with tuples addressed by their
//! row-major index.
//!
//! Two closure strategies share one interface. Small universes use a forward
//! semi-naive sweep (each argument combination is evaluated once, and only
//! combinations touching the newest generation are revisited). Large
//! universes with operations of arity three or more use a backward
//! strategy: every missing tuple is tested for a decomposition
//! `x = f(y1,…,yk)` over current members, driven by per-coordinate value
//! indexes, while binary operations keep running forward.

use crate::algebra::{capped_pow, decode_into, Algebra, Elem, TABLE_CAP};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::Meter;

/// Argument-combination count above which forward closure is avoided.
const FORWARD_LIMIT: f64 = 1.0e8;
/// Largest precomputed index table, in entries.
const INDEX_TABLE_LIMIT: usize = 1 << 22;

/// A subset of `A^n` closed under the basis, or the partial result of a
/// closure that ran out of budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub set: BitSet,
    /// Members in discovery order.
    pub elems: Vec<u32>,
    /// Fixpoint reached (or the whole power produced).
    pub complete: bool,
}

impl Closure {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.elems.len() == self.set.capacity()
    }
}

struct PowerOp {
    arity: usize,
    table: Vec<Elem>,
    /// Whole-tuple lookup table when small enough.
    index: Option<Vec<u32>>,
    /// `allowed[y][len]` maps an encoded prefix of length `len` to the mask
    /// of next values that can still reach `y`.
    allowed: Vec<Vec<Vec<u8>>>,
}

/// `A^n` for a fixed algebra `A`.
pub struct PowerAlgebra {
    size: usize,
    n: usize,
    universe: usize,
    digits: Vec<Elem>,
    weights: Vec<u32>,
    ops: Vec<PowerOp>,
}

impl PowerAlgebra {
    pub fn new(alg: &Algebra, n: usize) -> Result<Self> {
        let size = alg.size();
        let universe = capped_pow(size, n).ok_or(Error::TableCap { size, arity: n, cap: TABLE_CAP })?;
        let mut digits = vec![0; universe * n];
        for x in 0..universe {
            decode_into(x, size, &mut digits[x * n..(x + 1) * n]);
        }
        let weights: Vec<u32> = (0..n).map(|j| size.pow((n - 1 - j) as u32) as u32).collect();
        let mut pa = PowerAlgebra { size, n, universe, digits, weights, ops: Vec::new() };
        for f in alg.basis() {
            let k = f.arity();
            let mut allowed = vec![Vec::new(); size];
            for (y, slot) in allowed.iter_mut().enumerate() {
                let mut per_len: Vec<Vec<u8>> = (0..k).map(|l| vec![0u8; size.pow(l as u32)]).collect();
                let mut t = vec![0 as Elem; k];
                for idx in 0..f.table().len() {
                    if f.at(idx) as usize != y {
                        continue;
                    }
                    decode_into(idx, size, &mut t);
                    let mut prefix = 0usize;
                    for (l, row) in per_len.iter_mut().enumerate() {
                        row[prefix] |= 1 << t[l];
                        prefix = prefix * size + t[l] as usize;
                    }
                }
                *slot = per_len;
            }
            let mut op = PowerOp { arity: k, table: f.table().to_vec(), index: None, allowed };
            let entries = (universe as f64).powi(k as i32);
            if k > 0 && entries <= INDEX_TABLE_LIMIT as f64 {
                let total = universe.pow(k as u32);
                let mut args = vec![0u32; k];
                let mut tab = Vec::with_capacity(total);
                for i in 0..total {
                    let mut r = i;
                    for a in args.iter_mut().rev() {
                        *a = (r % universe) as u32;
                        r /= universe;
                    }
                    tab.push(pa.apply_digits(&op, &args));
                }
                op.index = Some(tab);
            }
            pa.ops.push(op);
        }
        Ok(pa)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn exponent(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn digits(&self, x: u32) -> &[Elem] {
        let x = x as usize;
        &self.digits[x * self.n..(x + 1) * self.n]
    }

    pub fn encode(&self, t: &[Elem]) -> u32 {
        crate::algebra::encode(t, self.size) as u32
    }

    fn apply_digits(&self, op: &PowerOp, args: &[u32]) -> u32 {
        let mut out = 0u32;
        for j in 0..self.n {
            let mut r = 0usize;
            for &a in args {
                r = r * self.size + self.digits[a as usize * self.n + j] as usize;
            }
            out += op.table[r] as u32 * self.weights[j];
        }
        out
    }

    /// Coordinatewise application of basis operation `op`.
    pub fn apply(&self, op: usize, args: &[u32]) -> u32 {
        let o = &self.ops[op];
        match &o.index {
            Some(t) => t[args.iter().fold(0usize, |acc, &a| acc * self.universe + a as usize)],
            None => self.apply_digits(o, args),
        }
    }

    fn forward_cost(&self, arity: usize) -> f64 {
        (self.universe as f64).powi(arity as i32)
    }

    fn all_forward(&self) -> bool {
        self.ops.iter().all(|o| self.forward_cost(o.arity) <= FORWARD_LIMIT)
    }

    /// Closure of `gens`.
    pub fn closure(&self, gens: &[u32], meter: &mut Meter, stop_when_full: bool) -> Closure {
        let mut set = BitSet::new(self.universe);
        let mut elems = Vec::new();
        for &g in gens {
            if set.insert(g as usize) {
                elems.push(g);
            }
        }
        self.close_from(set, elems, 0, meter, stop_when_full)
    }

    /// Closure of `closed ∪ extra`, where `closed` is already a subuniverse.
    pub fn extend(&self, closed: &Closure, extra: &[u32], meter: &mut Meter) -> Closure {
        let mut set = closed.set.clone();
        let mut elems = closed.elems.clone();
        let start = elems.len();
        for &g in extra {
            if set.insert(g as usize) {
                elems.push(g);
            }
        }
        self.close_from(set, elems, start, meter, false)
    }

    /// `elems[..frontier]` must already be closed.
    fn close_from(&self, set: BitSet, elems: Vec<u32>, frontier: usize, meter: &mut Meter, stop: bool) -> Closure {
        let mut st = State { set, elems, index: None };
        let cheap: Vec<usize> = if self.all_forward() {
            (0..self.ops.len()).collect()
        } else {
            (0..self.ops.len()).filter(|&i| self.ops[i].arity <= 2).collect()
        };
        let costly: Vec<usize> = (0..self.ops.len()).filter(|i| !cheap.contains(i)).collect();
        let mut ok = self.forward(&mut st, frontier, &cheap, meter, stop);
        if ok && !costly.is_empty() {
            loop {
                if st.elems.len() == self.universe {
                    break;
                }
                let before = st.elems.len();
                match self.backward_pass(&mut st, &costly, meter, stop) {
                    None => {
                        ok = false;
                        break;
                    }
                    Some(0) => break,
                    Some(_) => {}
                }
                if !self.forward(&mut st, before, &cheap, meter, stop) {
                    ok = false;
                    break;
                }
            }
        }
        let complete = ok || st.elems.len() == self.universe;
        Closure { set: st.set, elems: st.elems, complete }
    }

    /// Semi-naive forward sweep. Returns false when the budget ran out.
    fn forward(&self, st: &mut State, mut frontier: usize, ops: &[usize], meter: &mut Meter, stop: bool) -> bool {
        if ops.is_empty() {
            return true;
        }
        let mut args = Vec::new();
        while frontier < st.elems.len() {
            let end = st.elems.len();
            for &oi in ops {
                let k = self.ops[oi].arity;
                if k == 0 {
                    continue;
                }
                // Position p is the first argument drawn from the new
                // generation; earlier ones come from the old part.
                for p in 0..k {
                    let combos = (frontier as f64).powi(p as i32)
                        * (end - frontier) as f64
                        * (end as f64).powi((k - 1 - p) as i32);
                    if !meter.charge(combos as u64) || meter.out_of_time() {
                        return false;
                    }
                    args.clear();
                    args.resize(k, 0);
                    if self.sweep(st, oi, p, 0, frontier, end, &mut args, stop) {
                        return true;
                    }
                }
            }
            frontier = end;
        }
        true
    }

    /// Returns true when the whole power has been produced and `stop` is set.
    #[allow(clippy::too_many_arguments)]
    fn sweep(&self, st: &mut State, oi: usize, p: usize, pos: usize, fs: usize, end: usize, args: &mut Vec<u32>, stop: bool) -> bool {
        let k = args.len();
        if pos == k {
            let y = self.apply(oi, args);
            if st.add(y, self) && stop && st.elems.len() == self.universe {
                return true;
            }
            return false;
        }
        let (lo, hi) = if pos < p {
            (0, fs)
        } else if pos == p {
            (fs, end)
        } else {
            (0, end)
        };
        for i in lo..hi {
            args[pos] = st.elems[i];
            if self.sweep(st, oi, p, pos + 1, fs, end, args, stop) {
                return true;
            }
        }
        false
    }

    /// One pass over the complement; returns the number of tuples added,
    /// or `None` on budget exhaustion.
    fn backward_pass(&self, st: &mut State, ops: &[usize], meter: &mut Meter, stop: bool) -> Option<usize> {
        if st.index.is_none() {
            st.build_index(self);
        }
        let mut added = 0;
        for x in 0..self.universe as u32 {
            if st.set.contains(x as usize) {
                continue;
            }
            for &oi in ops {
                match self.decompose(x, oi, st, meter) {
                    Err(()) => return None,
                    Ok(Some(_)) => {
                        st.add(x, self);
                        added += 1;
                        break;
                    }
                    Ok(None) => {}
                }
            }
            if stop && st.elems.len() == self.universe {
                break;
            }
        }
        Some(added)
    }

    /// Members `y1…yk` with `op(y1,…,yk) = x`, least in lexicographic order.
    fn decompose(&self, x: u32, oi: usize, st: &State, meter: &mut Meter) -> std::result::Result<Option<Vec<u32>>, ()> {
        let op = &self.ops[oi];
        if op.arity == 0 {
            let v = (0..self.n).all(|j| op.table[0] == self.digits(x)[j]);
            return Ok(v.then(Vec::new));
        }
        let idx = st.index.as_ref().expect("index built");
        let target: Vec<usize> = self.digits(x).iter().map(|&d| d as usize).collect();
        let mut prefix = vec![0usize; self.n];
        let mut args = Vec::with_capacity(op.arity);
        let found = self.decompose_at(op, &target, &mut prefix, &mut args, st, idx, meter)?;
        Ok(found.then_some(args))
    }

    #[allow(clippy::too_many_arguments)]
    fn decompose_at(
        &self,
        op: &PowerOp,
        target: &[usize],
        prefix: &mut [usize],
        args: &mut Vec<u32>,
        st: &State,
        idx: &[Vec<BitSet>],
        meter: &mut Meter,
    ) -> std::result::Result<bool, ()> {
        let pos = args.len();
        if pos == op.arity {
            return Ok(true);
        }
        let words = st.set.words().len();
        if !meter.charge((words * self.n) as u64 + 1) {
            return Err(());
        }
        let full = ((1u16 << self.size) - 1) as u8;
        let mut cand: Vec<u64> = st.set.words().to_vec();
        for j in 0..self.n {
            let mask = op.allowed[target[j]][pos][prefix[j]];
            if mask == 0 {
                return Ok(false);
            }
            if mask == full {
                continue;
            }
            for (w, c) in cand.iter_mut().enumerate() {
                let mut u = 0u64;
                for v in 0..self.size {
                    if mask >> v & 1 == 1 {
                        u |= idx[j][v].words()[w];
                    }
                }
                *c &= u;
            }
        }
        for (wi, &word) in cand.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let y = (wi * 64 + w.trailing_zeros() as usize) as u32;
                w &= w - 1;
                let d = self.digits(y);
                let saved: Vec<usize> = prefix.to_vec();
                for j in 0..self.n {
                    prefix[j] = prefix[j] * self.size + d[j] as usize;
                }
                args.push(y);
                if self.decompose_at(op, target, prefix, args, st, idx, meter)? {
                    return Ok(true);
                }
                args.pop();
                prefix.copy_from_slice(&saved);
            }
        }
        Ok(false)
    }

    /// Can `x` be written as `f(y1,…,yk)` with every `yi ≠ x`?
    pub fn generable_from_others(&self, x: u32, meter: &mut Meter) -> Option<bool> {
        let mut set = BitSet::full(self.universe);
        set.remove(x as usize);
        let mut st = State { set, elems: Vec::new(), index: None };
        st.build_index(self);
        for oi in 0..self.ops.len() {
            match self.decompose(x, oi, &st, meter) {
                Err(()) => return None,
                Ok(Some(_)) => return Some(true),
                Ok(None) => {}
            }
        }
        Some(false)
    }
}

struct State {
    set: BitSet,
    elems: Vec<u32>,
    /// `index[j][v]`: members whose coordinate `j` equals `v`.
    index: Option<Vec<Vec<BitSet>>>,
}

impl State {
    fn add(&mut self, y: u32, pa: &PowerAlgebra) -> bool {
        if !self.set.insert(y as usize) {
            return false;
        }
        self.elems.push(y);
        if let Some(idx) = &mut self.index {
            for (j, &d) in pa.digits(y).iter().enumerate() {
                idx[j][d as usize].insert(y as usize);
            }
        }
        true
    }

    fn build_index(&mut self, pa: &PowerAlgebra) {
        let mut idx = vec![vec![BitSet::new(pa.universe); pa.size]; pa.n];
        for y in self.set.iter() {
            for (j, &d) in pa.digits(y as u32).iter().enumerate() {
                idx[j][d as usize].insert(y);
            }
        }
        self.index = Some(idx);
    }
}

/// Subuniverse generated by `gens` inside `A^n`.
pub fn subpower_closure(alg: &Algebra, n: usize, gens: &[Vec<Elem>], meter: &mut Meter) -> Result<Closure> {
    let pa = PowerAlgebra::new(alg, n)?;
    let mut ids = Vec::with_capacity(gens.len());
    for g in gens {
        if g.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: g.len() });
        }
        for &e in g {
            alg.domain().check(e as usize)?;
        }
        ids.push(pa.encode(g));
    }
    Ok(pa.closure(&ids, meter, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{algebra_rs, algebra_s};
    use crate::Budget;

    fn naive(alg: &Algebra, n: usize, gens: &[u32]) -> BitSet {
        let pa = PowerAlgebra::new(alg, n).unwrap();
        let mut set = BitSet::new(pa.universe());
        for &g in gens {
            set.insert(g as usize);
        }
        loop {
            let members: Vec<u32> = set.iter().map(|x| x as u32).collect();
            let mut grew = false;
            for (oi, f) in alg.basis().iter().enumerate() {
                let k = f.arity();
                let total = members.len().pow(k as u32);
                for i in 0..total {
                    let mut r = i;
                    let mut args = vec![0; k];
                    for a in args.iter_mut().rev() {
                        *a = members[r % members.len()];
                        r /= members.len();
                    }
                    grew |= set.insert(pa.apply(oi, &args) as usize);
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn semilattice_square() {
        let s = algebra_s();
        let pa = PowerAlgebra::new(&s, 2).unwrap();
        let ab: Vec<u32> = [[0, 0], [0, 1], [1, 0], [1, 1]].iter().map(|t| pa.encode(t)).collect();
        let c = pa.closure(&ab, &mut Budget::default().meter(), false);
        assert!(c.is_full() && c.complete);
        let diag: Vec<u32> = (0..3).map(|e| pa.encode(&[e, e])).collect();
        let c = pa.closure(&diag, &mut Budget::default().meter(), false);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn strategies_agree_with_naive() {
        let rs = algebra_rs();
        for n in 1..=3 {
            let pa = PowerAlgebra::new(&rs, n).unwrap();
            for seed in 0..20u32 {
                let gens: Vec<u32> = (0..3).map(|i| (seed * 7 + i * 5) % pa.universe() as u32).collect();
                let c = pa.closure(&gens, &mut Budget::default().meter(), false);
                assert_eq!(c.set, naive(&rs, n, &gens));
            }
        }
    }

    #[test]
    fn backward_strategy_matches_forward() {
        // n = 5 pushes the 4-ary operation onto the backward path.
        let rs = algebra_rs();
        let pa = PowerAlgebra::new(&rs, 5).unwrap();
        assert!(!pa.all_forward());
        let gens: Vec<u32> = [[0, 1, 1, 0, 1], [1, 0, 1, 1, 0], [0, 0, 1, 1, 1], [1, 1, 0, 0, 0]]
            .iter()
            .map(|t| pa.encode(t))
            .collect();
        let back = pa.closure(&gens, &mut Budget::default().meter(), false);
        let fwd = naive(&rs, 5, &gens);
        assert!(back.complete);
        assert_eq!(back.set, fwd);
    }

    #[test]
    fn mandatory_tuples() {
        let s = algebra_s();
        let pa = PowerAlgebra::new(&s, 2).unwrap();
        let mut m = Budget::default().meter();
        assert_eq!(pa.generable_from_others(pa.encode(&[0, 1]), &mut m), Some(false));
        assert_eq!(pa.generable_from_others(pa.encode(&[0, 2]), &mut m), Some(true));
    }
}

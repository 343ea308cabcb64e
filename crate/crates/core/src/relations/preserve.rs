//! Preservation of relations by operations.

use crate::algebra::{Domain, Elem, Operation, Relation};
use crate::error::{Error, Result};
use crate::Budget;

/// Columns from ρ whose coordinatewise image leaves ρ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationCounterexample {
    /// `y1,…,yk ∈ ρ`.
    pub columns: Vec<Vec<Elem>>,
    /// `γ = f(y1,…,yk) ∉ ρ`.
    pub result: Vec<Elem>,
    /// Matrix rows `x1,…,xn`, row `i` holding coordinate `i` of each column.
    pub rows: Vec<Vec<Elem>>,
}

impl PreservationCounterexample {
    /// Independent recheck against `f` and `ρ`.
    pub fn recheck(&self, f: &Operation, rho: &Relation) -> bool {
        self.columns.len() == f.arity()
            && self.columns.iter().all(|c| rho.contains(c))
            && !rho.contains(&self.result)
            && self.rows.iter().enumerate().all(|(i, x)| f.apply(x) == self.result[i])
    }

    pub fn render(&self, d: &Domain) -> String {
        let cols: Vec<String> = self.columns.iter().map(|c| d.fmt_tuple(c)).collect();
        format!("columns={} result={}", cols.join(","), d.fmt_tuple(&self.result))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preservation {
    pub preserved: bool,
    pub counterexample: Option<PreservationCounterexample>,
}

/// Does `f` preserve `rho`? On failure the least counterexample, with
/// columns ordered lexicographically, is returned.
pub fn preserves(f: &Operation, rho: &Relation, budget: &Budget) -> Result<Preservation> {
    if f.size() != rho.size() {
        return Err(Error::invalid("operation and relation live on different domains"));
    }
    let members: Vec<Vec<Elem>> = rho.tuples().collect();
    let k = f.arity();
    let n = rho.arity();
    let work = (members.len() as f64).powi(k as i32) * n as f64;
    if work > budget.max_work as f64 {
        return Err(Error::Cap(format!(
            "checking {} columns of arity {k} needs {work:.0} steps, budget is {}",
            members.len(),
            budget.max_work
        )));
    }
    if k == 0 {
        let t = vec![f.at(0); n];
        let ok = rho.contains(&t);
        return Ok(Preservation {
            preserved: ok,
            counterexample: (!ok).then(|| PreservationCounterexample { columns: vec![], result: t, rows: vec![vec![]; n] }),
        });
    }
    if members.is_empty() {
        return Ok(Preservation { preserved: true, counterexample: None });
    }
    let size = f.size();
    let weights: Vec<usize> = (0..n).map(|j| size.pow((n - 1 - j) as u32)).collect();
    let mut partial = vec![vec![0usize; n]; k + 1];
    let mut pick = vec![0usize; k];
    let found = search(f, rho, &members, &weights, 0, &mut partial, &mut pick);
    Ok(match found {
        None => Preservation { preserved: true, counterexample: None },
        Some(()) => {
            let columns: Vec<Vec<Elem>> = pick.iter().map(|&i| members[i].clone()).collect();
            let rows: Vec<Vec<Elem>> = (0..n).map(|j| columns.iter().map(|c| c[j]).collect()).collect();
            let result: Vec<Elem> = rows.iter().map(|x| f.apply(x)).collect();
            Preservation { preserved: false, counterexample: Some(PreservationCounterexample { columns, result, rows }) }
        }
    })
}

fn search(
    f: &Operation,
    rho: &Relation,
    members: &[Vec<Elem>],
    weights: &[usize],
    pos: usize,
    partial: &mut Vec<Vec<usize>>,
    pick: &mut Vec<usize>,
) -> Option<()> {
    let k = f.arity();
    let size = f.size();
    if pos == k {
        let code: usize = partial[k].iter().zip(weights).map(|(&p, &w)| f.at(p) as usize * w).sum();
        return (!rho.contains_index(code)).then_some(());
    }
    for (i, y) in members.iter().enumerate() {
        pick[pos] = i;
        let (lo, hi) = partial.split_at_mut(pos + 1);
        for ((dst, &src), &v) in hi[0].iter_mut().zip(&lo[pos]).zip(y) {
            *dst = src * size + v as usize;
        }
        if search(f, rho, members, weights, pos + 1, partial, pick).is_some() {
            return Some(());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Domain, A, B, C};
    use crate::gallery::{named, NamedOp};

    #[test]
    fn examples() {
        let d = Domain::default();
        let s = named(NamedOp::S).unwrap();
        let rho = Relation::parse_braces("{(a,b),(b,a)}", &d, None).unwrap();
        let p = preserves(&s, &rho, &Budget::default()).unwrap();
        assert!(!p.preserved);
        let cx = p.counterexample.unwrap();
        assert_eq!(cx.columns, vec![vec![A, B], vec![B, A]]);
        assert_eq!(cx.result, vec![C, C]);
        assert!(cx.recheck(&s, &rho));
        let full = Relation::full("D2", 3, 2).unwrap();
        assert!(preserves(&s, &full, &Budget::default()).unwrap().preserved);
        let r = named(NamedOp::R).unwrap();
        let ac = Relation::from_tuples("ac", 3, 1, [[A], [C]]).unwrap();
        assert!(preserves(&r, &ac, &Budget::default()).unwrap().preserved);
    }
}

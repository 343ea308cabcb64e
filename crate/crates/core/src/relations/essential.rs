//! Projections, the relation rebuilt from its one-coordinate projections,
//! and essential tuples.

use crate::algebra::{decode, encode, semilattice_sink, Elem, Operation, Relation};
use crate::error::{Error, Result};
use crate::Budget;

/// Largest arity scanned exhaustively.
pub const RELATION_SCAN_CAP: usize = 6;

/// A tuple outside ρ that enters ρ after changing any single coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialTuple {
    pub tuple: Vec<Elem>,
    /// `repairs[i]`: least value that, placed at coordinate `i`, lands in ρ.
    pub repairs: Vec<Elem>,
}

impl EssentialTuple {
    pub fn recheck(&self, rho: &Relation) -> bool {
        !rho.contains(&self.tuple)
            && self.repairs.iter().enumerate().all(|(i, &b)| {
                let mut t = self.tuple.clone();
                t[i] = b;
                rho.contains(&t)
            })
    }
}

fn scan_cap(rho: &Relation) -> Result<()> {
    if rho.arity() > RELATION_SCAN_CAP {
        return Err(Error::Cap(format!("relation scans need arity <= {RELATION_SCAN_CAP}, got {}", rho.arity())));
    }
    Ok(())
}

/// Existentially quantify coordinate `i`. Needs arity at least 2.
pub fn project_out(rho: &Relation, i: usize) -> Result<Relation> {
    let n = rho.arity();
    if i >= n {
        return Err(Error::invalid(format!("coordinate {i} out of range for arity {n}")));
    }
    if n == 1 {
        return Err(Error::invalid("projecting a unary relation leaves no coordinates"));
    }
    let mut out = Relation::empty(format!("{}_{i}", rho.name()), rho.size(), n - 1)?;
    for mut t in rho.tuples() {
        t.remove(i);
        out.insert(&t)?;
    }
    Ok(out)
}

/// Is the tuple with coordinate `i` deleted in the projection along `i`?
fn in_projection(rho: &Relation, t: &[Elem], i: usize) -> bool {
    let mut u = t.to_vec();
    (0..rho.size() as Elem).any(|b| {
        u[i] = b;
        rho.contains(&u)
    })
}

/// Conjunction of all one-coordinate projections, re-inflated to arity n.
pub fn rho_tilde(rho: &Relation) -> Result<Relation> {
    scan_cap(rho)?;
    let n = rho.arity();
    let mut out = Relation::empty(format!("{}~", rho.name()), rho.size(), n)?;
    if n == 1 {
        if !rho.is_empty() {
            out = Relation::full(out.name(), rho.size(), 1)?;
        }
        return Ok(out);
    }
    for idx in 0..rho.slots() {
        let t = decode(idx, rho.size(), n);
        if (0..n).all(|i| in_projection(rho, &t, i)) {
            out.insert(&t)?;
        }
    }
    Ok(out)
}

/// All essential tuples in lexicographic order.
pub fn essential_tuples(rho: &Relation) -> Result<Vec<EssentialTuple>> {
    scan_cap(rho)?;
    let n = rho.arity();
    let size = rho.size();
    let mut out = Vec::new();
    for idx in 0..rho.slots() {
        if rho.contains_index(idx) {
            continue;
        }
        let t = decode(idx, size, n);
        let mut repairs = Vec::with_capacity(n);
        let mut u = t.clone();
        for i in 0..n {
            let fix = (0..size as Elem).find(|&b| {
                u[i] = b;
                rho.contains_index(encode(&u, size))
            });
            u[i] = t[i];
            match fix {
                Some(b) => repairs.push(b),
                None => break,
            }
        }
        if repairs.len() == n {
            out.push(EssentialTuple { tuple: t, repairs });
        }
    }
    Ok(out)
}

/// A relation is essential when it differs from its projection conjunction.
pub fn is_essential(rho: &Relation) -> Result<bool> {
    Ok(!rho_tilde(rho)?.same_tuples(rho))
}

/// Outcome of the double-`c` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleC {
    pub holds: bool,
    pub preserved_by_s: bool,
    /// Essential tuples with two or more entries equal to the sink.
    pub offending: Vec<EssentialTuple>,
}

/// No essential tuple of an `s`-invariant relation has two sink entries.
pub fn check_double_c_property(rho: &Relation, s: &Operation) -> Result<DoubleC> {
    let sink = semilattice_sink(s).ok_or(Error::NoSemilattice)?;
    let offending: Vec<EssentialTuple> = essential_tuples(rho)?
        .into_iter()
        .filter(|e| e.tuple.iter().filter(|&&x| x == sink).count() >= 2)
        .collect();
    let preserved_by_s = super::preserves(s, rho, &Budget::unlimited())?.preserved;
    Ok(DoubleC { holds: offending.is_empty() || !preserved_by_s, preserved_by_s, offending })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Domain, A, B};
    use crate::gallery::{named, NamedOp};

    fn rel(s: &str) -> Relation {
        Relation::parse_braces(s, &Domain::default(), None).unwrap()
    }

    #[test]
    fn projections() {
        let r = rel("{(a,b),(b,a)}");
        assert_eq!(project_out(&r, 0).unwrap().tuples().collect::<Vec<_>>(), vec![vec![A], vec![B]]);
        assert!(project_out(&Relation::full("f", 3, 2).unwrap(), 1).unwrap().is_full());
        let single = rel("{(a,a,c)}");
        assert_eq!(project_out(&single, 2).unwrap().tuples().collect::<Vec<_>>(), vec![vec![A, A]]);
    }

    #[test]
    fn tilde_and_essential_examples() {
        let swap = rel("{(a,b),(b,a)}");
        let square = rel("{(a,a),(a,b),(b,a),(b,b)}");
        assert!(rho_tilde(&swap).unwrap().same_tuples(&square));
        assert!(rho_tilde(&rel("{(a,a),(b,b)}")).unwrap().same_tuples(&square));
        let prod = rel("{(a,a),(a,b),(a,c)}");
        assert!(rho_tilde(&prod).unwrap().same_tuples(&prod));
        assert!(essential_tuples(&prod).unwrap().is_empty());

        let ess = essential_tuples(&swap).unwrap();
        assert_eq!(ess.len(), 2);
        assert_eq!(ess[0], EssentialTuple { tuple: vec![A, A], repairs: vec![B, B] });
        assert_eq!(ess[1], EssentialTuple { tuple: vec![B, B], repairs: vec![A, A] });
        assert!(ess.iter().all(|e| e.recheck(&swap)));
        let diag = essential_tuples(&rel("{(a,a),(b,b)}")).unwrap();
        assert!(diag.iter().any(|e| e.tuple == vec![A, B]));
    }

    #[test]
    fn double_c() {
        let s = named(NamedOp::S).unwrap();
        assert!(check_double_c_property(&Relation::full("f", 3, 3).unwrap(), &s).unwrap().holds);
        // (c,c) is essential here, so the relation cannot be s-invariant.
        let r = rel("{(a,c),(c,a)}");
        let d = check_double_c_property(&r, &s).unwrap();
        assert!(!d.offending.is_empty());
        assert!(!d.preserved_by_s);
        assert!(d.holds);
    }
}

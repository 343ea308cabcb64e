//! Preservation of all low-arity invariants by `f^a_n` / `f^b_n` and their
//! hatted variants.

use super::{enumerate_invariants, preserves, PreservationCounterexample};
use crate::algebra::{Algebra, Relation};
use crate::error::{Error, Result};
use crate::gallery::{named, NamedOp};
use crate::Budget;

#[derive(Clone, Debug)]
pub struct FnLevel {
    pub h: usize,
    pub invariants: usize,
    pub a_holds: bool,
    pub b_holds: bool,
    /// First invariant (in enumeration order) broken by each variant.
    pub a_counter: Option<(Relation, PreservationCounterexample)>,
    pub b_counter: Option<(Relation, PreservationCounterexample)>,
    pub complete: bool,
}

impl FnLevel {
    pub fn disjunct(&self) -> Option<char> {
        if self.a_holds {
            Some('a')
        } else if self.b_holds {
            Some('b')
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
pub struct FnLemmaReport {
    pub n: usize,
    pub hatted: bool,
    pub levels: Vec<FnLevel>,
}

impl FnLemmaReport {
    /// Every level has a variant preserving all of its invariants.
    pub fn holds(&self) -> bool {
        self.levels.iter().all(|l| l.complete && (l.a_holds || l.b_holds))
    }

    /// One variant works for every level at once.
    pub fn uniform(&self) -> Option<char> {
        if self.levels.iter().all(|l| l.a_holds) {
            Some('a')
        } else if self.levels.iter().all(|l| l.b_holds) {
            Some('b')
        } else {
            None
        }
    }

    pub fn complete(&self) -> bool {
        self.levels.iter().all(|l| l.complete)
    }
}

fn first_break(
    f: &crate::algebra::Operation,
    rels: &[Relation],
    budget: &Budget,
) -> Result<Option<(Relation, PreservationCounterexample)>> {
    for rho in rels {
        let p = preserves(f, rho, budget)?;
        if let Some(cx) = p.counterexample {
            return Ok(Some((rho.clone(), cx)));
        }
    }
    Ok(None)
}

pub fn verify_fn_lemma(alg: &Algebra, n: usize, hatted: bool, h_max: usize, budget: &Budget) -> Result<FnLemmaReport> {
    let (fa, fb) = if hatted {
        (named(NamedOp::HFA(n))?, named(NamedOp::HFB(n))?)
    } else {
        (named(NamedOp::FA(n))?, named(NamedOp::FB(n))?)
    };
    if h_max >= fa.arity() {
        return Err(Error::invalid(format!("h_max must stay below the arity {}", fa.arity())));
    }
    if alg.size() != 3 {
        return Err(Error::invalid("the f operations live on a 3-element domain"));
    }
    let mut levels = Vec::new();
    for h in 1..=h_max {
        let inv = enumerate_invariants(alg, h, budget)?;
        let a_counter = first_break(&fa, &inv.relations, budget)?;
        let b_counter = first_break(&fb, &inv.relations, budget)?;
        levels.push(FnLevel {
            h,
            invariants: inv.relations.len(),
            a_holds: a_counter.is_none(),
            b_holds: b_counter.is_none(),
            a_counter,
            b_counter,
            complete: inv.complete,
        });
    }
    Ok(FnLemmaReport { n, hatted, levels })
}

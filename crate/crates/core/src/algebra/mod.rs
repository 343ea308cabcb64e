//! Domains, operation tables, relations, algebras and terms.

mod domain;
pub mod format;
mod operation;
mod relation;
mod term;

pub use domain::{
    all_tuples, capped_pow, decode, decode_into, encode, next_tuple, Domain, Elem, A, B, C, MAX_DOMAIN, TABLE_CAP,
};
pub use operation::Operation;
pub use relation::Relation;
pub use term::Term;

use crate::error::{Error, Result};

/// A domain with an ordered, nonempty basis of operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    name: String,
    domain: Domain,
    basis: Vec<Operation>,
}

impl Algebra {
    pub fn new(name: impl Into<String>, domain: Domain, basis: Vec<Operation>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::invalid("an algebra needs at least one basis operation"));
        }
        for f in &basis {
            if f.size() != domain.size() {
                return Err(Error::invalid(format!(
                    "operation {} lives on {} elements, domain has {}",
                    f.name(),
                    f.size(),
                    domain.size()
                )));
            }
        }
        Ok(Algebra { name: name.into(), domain, basis })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.domain.size()
    }

    pub fn basis(&self) -> &[Operation] {
        &self.basis
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|f| f.name() == name)
    }

    pub fn max_arity(&self) -> usize {
        self.basis.iter().map(Operation::arity).max().unwrap_or(0)
    }

    pub fn is_idempotent(&self) -> bool {
        self.basis.iter().all(Operation::is_idempotent)
    }

    /// `(D;r,s)` style label.
    pub fn label(&self) -> String {
        let ops: Vec<&str> = self.basis.iter().map(Operation::name).collect();
        format!("(D;{})", ops.join(","))
    }

    /// Index of the designated semilattice operation: a binary idempotent
    /// operation sending every off-diagonal pair to one fixed element.
    pub fn semilattice_index(&self) -> Option<usize> {
        self.basis.iter().position(|f| semilattice_sink(f).is_some())
    }

    pub fn semilattice(&self) -> Result<&Operation> {
        self.semilattice_index().map(|i| &self.basis[i]).ok_or(Error::NoSemilattice)
    }

    pub fn eval_term(&self, term: &Term, args: &[crate::algebra::Elem]) -> Result<Elem> {
        term.validate(self, args.len())?;
        for &a in args {
            self.domain.check(a as usize)?;
        }
        Ok(self.eval_unchecked(term, args))
    }

    fn eval_unchecked(&self, term: &Term, args: &[Elem]) -> Elem {
        match term {
            Term::Var(i) => args[*i],
            Term::App(op, ts) => {
                let vals: Vec<Elem> = ts.iter().map(|t| self.eval_unchecked(t, args)).collect();
                self.basis[*op].apply(&vals)
            }
        }
    }

    /// Explicit table of the `m`-ary term operation.
    pub fn materialize(&self, term: &Term, m: usize) -> Result<Operation> {
        term.validate(self, m)?;
        let len = capped_pow(self.size(), m).ok_or(Error::TableCap { size: self.size(), arity: m, cap: TABLE_CAP })?;
        let table = self.table_of(term, m, len);
        Operation::from_table(term.render(self), self.size(), m, table)
    }

    fn table_of(&self, term: &Term, m: usize, len: usize) -> Vec<Elem> {
        let n = self.size();
        match term {
            Term::Var(i) => {
                let stride = n.pow((m - 1 - i) as u32);
                (0..len).map(|r| (r / stride % n) as Elem).collect()
            }
            Term::App(op, ts) => {
                let f = &self.basis[*op];
                let kids: Vec<Vec<Elem>> = ts.iter().map(|t| self.table_of(t, m, len)).collect();
                (0..len)
                    .map(|r| f.at(kids.iter().fold(0, |acc, k| acc * n + k[r] as usize)))
                    .collect()
            }
        }
    }

    /// `g(x1,x1',…,xk,xk') = f(s(x1,x1'),…,s(xk,xk'))`.
    pub fn s_double(&self, f: &Operation) -> Result<Operation> {
        let s = self.semilattice()?;
        let k = f.arity();
        let n = self.size();
        capped_pow(n, 2 * k).ok_or(Error::TableCap { size: n, arity: 2 * k, cap: TABLE_CAP })?;
        let mut inner = vec![0; k];
        Operation::from_fn(format!("{}*{}", f.name(), s.name()), n, 2 * k, |a| {
            for (i, slot) in inner.iter_mut().enumerate() {
                *slot = s.apply(&a[2 * i..2 * i + 2]);
            }
            f.apply(&inner)
        })
    }
}

/// The absorbing off-diagonal value if `f` is a semilattice of that shape.
pub fn semilattice_sink(f: &Operation) -> Option<Elem> {
    if f.arity() != 2 || !f.is_idempotent() {
        return None;
    }
    let n = f.size();
    let mut sink = None;
    for x in 0..n as Elem {
        for y in 0..n as Elem {
            if x != y {
                let v = f.apply(&[x, y]);
                match sink {
                    None => sink = Some(v),
                    Some(z) if z != v => return None,
                    _ => {}
                }
            }
        }
    }
    sink
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{algebra_rs, algebra_s, named, NamedOp};

    #[test]
    fn term_evaluation() {
        let rs = algebra_rs();
        let t = Term::parse("r(x0,x0,x0,x1)", &rs).unwrap();
        assert_eq!(rs.eval_term(&t, &[A, B]).unwrap(), A);
        let t = Term::parse("r(x0,x0,x1,x2)", &rs).unwrap();
        assert_eq!(rs.eval_term(&t, &[A, B, B]).unwrap(), C);
        assert_eq!(rs.eval_term(&Term::Var(0), &[B, C]).unwrap(), B);
        assert!(rs.eval_term(&Term::Var(2), &[B, C]).is_err());
        assert_eq!(t.render(&rs), "r(x0,x0,x1,x2)");
    }

    #[test]
    fn materialization() {
        let rs = algebra_rs();
        let p = rs.materialize(&Term::parse("r(x0,x0,x0,x1)", &rs).unwrap(), 2).unwrap();
        assert_eq!(p.apply(&[A, B]), A);
        assert_eq!(p.apply(&[A, C]), C);
        let s = algebra_s();
        let m = s.materialize(&Term::parse("s(x0,x1)", &s).unwrap(), 2).unwrap();
        assert!(m.shares_table(&s.basis()[0]));
        let pi = s.materialize(&Term::Var(0), 2).unwrap();
        assert!(pi.shares_table(&Operation::projection(3, 2, 0).unwrap()));
    }

    #[test]
    fn doubling() {
        let s = algebra_s();
        let g = s.s_double(&s.basis()[0]).unwrap();
        assert_eq!(g.apply(&[A, A, B, B]), C);
        assert_eq!(g.apply(&[A, A, A, A]), A);
        let rs = algebra_rs();
        let g = rs.s_double(&named(NamedOp::R).unwrap()).unwrap();
        assert_eq!(g.arity(), 8);
        assert_eq!(g.apply(&[A, A, B, B, B, B, B, B]), B);
    }

    #[test]
    fn parse_errors() {
        let rs = algebra_rs();
        assert!(Term::parse("r(x0,x1)", &rs).is_err());
        assert!(Term::parse("q(x0)", &rs).is_err());
        assert!(Term::parse("s(x0,x1", &rs).is_err());
        assert!(Term::parse("s(x0,x1))", &rs).is_err());
    }
}

use std::fmt::Write as _;

use super::Algebra;
use crate::error::{Error, Result};

/// A term over an algebra's basis: variables `x0, x1, …` and applications
/// of basis operations, addressed by basis index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(usize, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Self {
        Term::Var(i)
    }

    pub fn app(op: usize, args: Vec<Term>) -> Self {
        Term::App(op, args)
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Smallest arity the term can be evaluated at.
    pub fn min_arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::App(_, args) => args.iter().map(Term::min_arity).max().unwrap_or(0),
        }
    }

    pub fn validate(&self, alg: &Algebra, arity: usize) -> Result<()> {
        match self {
            Term::Var(i) if *i < arity => Ok(()),
            Term::Var(i) => Err(Error::MalformedTerm(format!("variable x{i} at arity {arity}"))),
            Term::App(op, args) => {
                let f = alg
                    .basis()
                    .get(*op)
                    .ok_or_else(|| Error::MalformedTerm(format!("no basis operation #{op}")))?;
                if f.arity() != args.len() {
                    return Err(Error::MalformedTerm(format!(
                        "{} takes {} arguments, got {}",
                        f.name(),
                        f.arity(),
                        args.len()
                    )));
                }
                args.iter().try_for_each(|a| a.validate(alg, arity))
            }
        }
    }

    /// Replace every variable `xi` by `subst[i]`.
    pub fn substitute(&self, subst: &[Term]) -> Term {
        match self {
            Term::Var(i) => subst[*i].clone(),
            Term::App(op, args) => Term::App(*op, args.iter().map(|a| a.substitute(subst)).collect()),
        }
    }

    /// Prefix syntax using the algebra's operation names.
    pub fn render(&self, alg: &Algebra) -> String {
        let mut out = String::new();
        self.render_into(alg, &mut out);
        out
    }

    fn render_into(&self, alg: &Algebra, out: &mut String) {
        match self {
            Term::Var(i) => {
                let _ = write!(out, "x{i}");
            }
            Term::App(op, args) => {
                out.push_str(alg.basis().get(*op).map_or("?", |f| f.name()));
                out.push('(');
                for (j, a) in args.iter().enumerate() {
                    if j > 0 {
                        out.push(',');
                    }
                    a.render_into(alg, out);
                }
                out.push(')');
            }
        }
    }

    /// Parse prefix syntax such as `r(x0,x0,x0,x1)`.
    pub fn parse(s: &str, alg: &Algebra) -> Result<Term> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse_at(&chars, &mut pos, alg)?;
        if pos != chars.len() {
            return Err(Error::MalformedTerm(format!("trailing input in `{s}`")));
        }
        Ok(t)
    }
}

fn parse_at(c: &[char], pos: &mut usize, alg: &Algebra) -> Result<Term> {
    let start = *pos;
    while *pos < c.len() && !matches!(c[*pos], '(' | ')' | ',') {
        *pos += 1;
    }
    let head: String = c[start..*pos].iter().collect();
    if head.is_empty() {
        return Err(Error::MalformedTerm(format!("expected a symbol at offset {start}")));
    }
    if *pos < c.len() && c[*pos] == '(' {
        *pos += 1;
        let op = alg.op_index(&head).ok_or_else(|| Error::MalformedTerm(format!("unknown operation `{head}`")))?;
        let mut args = Vec::new();
        if *pos < c.len() && c[*pos] == ')' {
            *pos += 1;
        } else {
            loop {
                args.push(parse_at(c, pos, alg)?);
                match c.get(*pos) {
                    Some(',') => *pos += 1,
                    Some(')') => {
                        *pos += 1;
                        break;
                    }
                    _ => return Err(Error::MalformedTerm("unbalanced parentheses".into())),
                }
            }
        }
        let t = Term::App(op, args);
        let f = &alg.basis()[op];
        if let Term::App(_, a) = &t {
            if a.len() != f.arity() {
                return Err(Error::MalformedTerm(format!("{} takes {} arguments", f.name(), f.arity())));
            }
        }
        return Ok(t);
    }
    if let Some(n) = head.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
        return Ok(Term::Var(n));
    }
    match alg.op_index(&head) {
        Some(op) if alg.basis()[op].arity() == 0 => Ok(Term::App(op, vec![])),
        _ => Err(Error::MalformedTerm(format!("expected variable `x<i>`, got `{head}`"))),
    }
}

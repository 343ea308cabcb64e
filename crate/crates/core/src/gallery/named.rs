use std::fmt;
use std::str::FromStr;

use crate::algebra::{Algebra, Domain, Elem, Operation, A, B, C};
use crate::error::{Error, Result};

/// The named operations on `{a,b,c}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedOp {
    S,
    R,
    T,
    /// `f^a_n`, arity `n+1`.
    FA(usize),
    FB(usize),
    /// hatted variant, arity `n+2`.
    HFA(usize),
    HFB(usize),
}

impl NamedOp {
    pub fn arity(self) -> usize {
        match self {
            NamedOp::S => 2,
            NamedOp::R | NamedOp::T => 4,
            NamedOp::FA(n) | NamedOp::FB(n) => n + 1,
            NamedOp::HFA(n) | NamedOp::HFB(n) => n + 2,
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            NamedOp::FA(n) | NamedOp::FB(n) if n < 3 => Err(Error::invalid(format!("{self} needs n >= 3"))),
            NamedOp::HFA(n) | NamedOp::HFB(n) if n < 2 => Err(Error::invalid(format!("{self} needs n >= 2"))),
            _ => Ok(()),
        }
    }

    /// The same operation with `a` and `b` swapped, if it is one of a pair.
    pub fn swapped(self) -> Option<NamedOp> {
        match self {
            NamedOp::FA(n) => Some(NamedOp::FB(n)),
            NamedOp::FB(n) => Some(NamedOp::FA(n)),
            NamedOp::HFA(n) => Some(NamedOp::HFB(n)),
            NamedOp::HFB(n) => Some(NamedOp::HFA(n)),
            _ => None,
        }
    }
}

impl fmt::Display for NamedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedOp::S => write!(f, "s"),
            NamedOp::R => write!(f, "r"),
            NamedOp::T => write!(f, "t"),
            NamedOp::FA(n) => write!(f, "fa{n}"),
            NamedOp::FB(n) => write!(f, "fb{n}"),
            NamedOp::HFA(n) => write!(f, "hfa{n}"),
            NamedOp::HFB(n) => write!(f, "hfb{n}"),
        }
    }
}

impl FromStr for NamedOp {
    type Err = Error;

    /// `s`, `r`, `t`, `fa:3`, `fb3`, `hfa:2`, …
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let split = s.find(|c: char| c.is_ascii_digit() || c == ':').unwrap_or(s.len());
        let (head, tail) = s.split_at(split);
        let n = || -> Result<usize> {
            tail.trim_start_matches(':').parse().map_err(|_| Error::UnknownName(s.clone()))
        };
        let op = match head {
            "s" if tail.is_empty() => NamedOp::S,
            "r" if tail.is_empty() => NamedOp::R,
            "t" if tail.is_empty() => NamedOp::T,
            "fa" => NamedOp::FA(n()?),
            "fb" => NamedOp::FB(n()?),
            "hfa" => NamedOp::HFA(n()?),
            "hfb" => NamedOp::HFB(n()?),
            _ => return Err(Error::UnknownName(s.clone())),
        };
        op.validate()?;
        Ok(op)
    }
}

fn off_diagonal(x: &[Elem]) -> bool {
    x.iter().any(|&e| e != x[0])
}

fn swap_ab(e: Elem) -> Elem {
    match e {
        A => B,
        B => A,
        other => other,
    }
}

fn by_rows(x: &[Elem], rows: &[(&[Elem], Elem)]) -> Elem {
    if !off_diagonal(x) {
        return x[0];
    }
    rows.iter().find(|(r, _)| *r == x).map_or(C, |&(_, v)| v)
}

fn fa_value(x: &[Elem]) -> Elem {
    if !off_diagonal(x) {
        return x[0];
    }
    let bs = x.iter().filter(|&&e| e == B).count();
    let others = x.iter().filter(|&&e| e != A && e != B).count();
    if others == 0 && bs == 1 {
        A
    } else {
        C
    }
}

fn hfa_value(x: &[Elem]) -> Elem {
    if !off_diagonal(x) {
        return x[0];
    }
    let rest = &x[1..];
    let others = x.iter().filter(|&&e| e != A && e != B).count();
    if others == 0 && x[0] == B && rest.iter().filter(|&&e| e == B).count() == 1 {
        A
    } else {
        C
    }
}

/// Build the table of a named operation.
pub fn named(spec: NamedOp) -> Result<Operation> {
    spec.validate()?;
    let name = spec.to_string();
    let k = spec.arity();
    match spec {
        NamedOp::S => Operation::from_fn(name, 3, 2, |x| if x[0] == x[1] { x[0] } else { C }),
        NamedOp::R => Operation::from_fn(name, 3, 4, |x| {
            by_rows(x, &[(&[A, B, B, B], B), (&[B, A, B, B], B), (&[A, A, A, B], A), (&[A, A, B, A], A)])
        }),
        NamedOp::T => Operation::from_fn(name, 3, 4, |x| {
            by_rows(x, &[(&[A, B, A, B], B), (&[A, B, B, A], A), (&[C, B, B, C], B), (&[A, C, A, C], A)])
        }),
        NamedOp::FA(_) => Operation::from_fn(name, 3, k, fa_value),
        NamedOp::HFA(_) => Operation::from_fn(name, 3, k, hfa_value),
        NamedOp::FB(_) | NamedOp::HFB(_) => {
            let base: fn(&[Elem]) -> Elem = if matches!(spec, NamedOp::FB(_)) { fa_value } else { hfa_value };
            let mut y = vec![0; k];
            Operation::from_fn(name, 3, k, |x| {
                for (d, &e) in y.iter_mut().zip(x) {
                    *d = swap_ab(e);
                }
                swap_ab(base(&y))
            })
        }
    }
}

/// Algebra on `{a,b,c}` with the listed named operations as basis.
pub fn algebra_of(ops: &[NamedOp]) -> Result<Algebra> {
    let basis = ops.iter().map(|&o| named(o)).collect::<Result<Vec<_>>>()?;
    let label: Vec<String> = ops.iter().map(ToString::to_string).collect();
    Algebra::new(label.join(""), Domain::default(), basis)
}

/// Parse `r,s` or `s t` into an algebra of named operations.
pub fn parse_named_algebra(s: &str) -> Result<Algebra> {
    let ops = s
        .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(NamedOp::from_str)
        .collect::<Result<Vec<_>>>()?;
    algebra_of(&ops)
}

/// `(D;s)`.
pub fn algebra_s() -> Algebra {
    algebra_of(&[NamedOp::S]).expect("builtin")
}

/// `(D;r,s)`, basis order `r, s`.
pub fn algebra_rs() -> Algebra {
    algebra_of(&[NamedOp::R, NamedOp::S]).expect("builtin")
}

/// `(D;s,t)`, basis order `s, t`.
pub fn algebra_st() -> Algebra {
    algebra_of(&[NamedOp::S, NamedOp::T]).expect("builtin")
}

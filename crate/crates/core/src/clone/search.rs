//! Term search against partial tables.

use std::fmt;
use std::str::FromStr;

use super::free::generate;
use crate::algebra::{encode, Algebra, Domain, Elem, Term};
use crate::error::{Error, Result};
use crate::{Budget, Outcome};

/// Required values of an `arity`-ary operation on some argument tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSpec {
    arity: usize,
    entries: Vec<(Vec<Elem>, Elem)>,
}

impl PartialSpec {
    pub fn new(arity: usize, entries: Vec<(Vec<Elem>, Elem)>) -> Result<Self> {
        for (i, (k, _)) in entries.iter().enumerate() {
            if k.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, got: k.len() });
            }
            if let Some((_, v0)) = entries[..i].iter().find(|(k0, _)| k0 == k) {
                let what = if *v0 == entries[i].1 { "duplicate key" } else { "conflicting values for key" };
                return Err(Error::invalid(format!("{what} {k:?}")));
            }
        }
        Ok(PartialSpec { arity, entries })
    }

    /// `ab=a,ac=c`; arity is taken from the keys.
    pub fn parse(d: &Domain, s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for part in s.split([',', ';']).filter(|p| !p.trim().is_empty()) {
            let (k, v) = part
                .split_once('=')
                .or_else(|| part.split_once("->"))
                .ok_or_else(|| Error::invalid(format!("expected tuple=value, got `{part}`")))?;
            let key = if k.contains(' ') {
                k.split_whitespace().map(|w| d.index(w)).collect::<Result<Vec<_>>>()?
            } else {
                d.parse_tuple(k)?
            };
            entries.push((key, d.index(v.trim())?));
        }
        let arity = entries.first().map(|e| e.0.len()).ok_or_else(|| Error::invalid("empty partial table"))?;
        for (k, _) in &entries {
            for &e in k {
                d.check(e as usize)?;
            }
        }
        Self::new(arity, entries)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &[(Vec<Elem>, Elem)] {
        &self.entries
    }

    pub fn matches_table(&self, table: &[Elem], size: usize) -> bool {
        self.entries.iter().all(|(k, v)| table[encode(k, size)] == *v)
    }

    pub fn render(&self, d: &Domain) -> String {
        let parts: Vec<String> =
            self.entries.iter().map(|(k, v)| format!("{}={}", d.fmt_tuple(k), d.name(*v))).collect();
        parts.join(",")
    }
}

/// Outcome of a term search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchVerdict {
    pub outcome: Outcome,
    pub witness: Option<Term>,
    /// Distinct tables generated.
    pub explored: usize,
    pub budget_hit: bool,
}

/// Smallest term (then least in basis/child order) meeting `spec`.
pub fn find_term_matching(alg: &Algebra, m: usize, spec: &PartialSpec, budget: &Budget) -> Result<SearchVerdict> {
    if spec.arity() != m {
        return Err(Error::ArityMismatch { expected: m, got: spec.arity() });
    }
    let size = alg.size();
    for (k, v) in spec.entries() {
        for &e in k.iter().chain(std::iter::once(v)) {
            alg.domain().check(e as usize)?;
        }
    }
    let rows: Vec<(usize, Elem)> = spec.entries().iter().map(|(k, v)| (encode(k, size), *v)).collect();
    let pred = move |t: &[Elem]| rows.iter().all(|&(r, v)| t[r] == v);
    let g = generate(alg, m, budget, &pred)?;
    let explored = g.free.len();
    Ok(match g.hit {
        Some(i) => {
            let w = g.free.witness(i);
            let check = alg.materialize(&w, m)?;
            debug_assert!(spec.matches_table(check.table(), size));
            if !spec.matches_table(check.table(), size) {
                return Err(Error::invalid("internal: witness failed revalidation"));
            }
            SearchVerdict { outcome: Outcome::Yes, witness: Some(w), explored, budget_hit: false }
        }
        None if g.free.complete => SearchVerdict { outcome: Outcome::No, witness: None, explored, budget_hit: false },
        None => SearchVerdict { outcome: Outcome::Unknown, witness: None, explored, budget_hit: true },
    })
}

/// Named target tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaTarget {
    P1,
    P2,
    R4,
    R4A,
    R4B,
}

impl LemmaTarget {
    pub const ALL: [LemmaTarget; 5] = [LemmaTarget::P1, LemmaTarget::P2, LemmaTarget::R4, LemmaTarget::R4A, LemmaTarget::R4B];

    pub fn spec(self) -> PartialSpec {
        let d = Domain::default();
        let text = match self {
            LemmaTarget::P1 => "ab=b,ba=c,ca=c",
            LemmaTarget::P2 => "ab=a,ba=c,bc=c",
            LemmaTarget::R4 | LemmaTarget::R4A => "abab=a,abba=a,abbb=c",
            LemmaTarget::R4B => "abab=b,abba=b,abaa=c",
        };
        PartialSpec::parse(&d, text).expect("builtin spec")
    }
}

impl fmt::Display for LemmaTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for LemmaTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "P1" => LemmaTarget::P1,
            "P2" => LemmaTarget::P2,
            "R4" => LemmaTarget::R4,
            "R4A" => LemmaTarget::R4A,
            "R4B" => LemmaTarget::R4B,
            _ => return Err(Error::UnknownName(s.to_string())),
        })
    }
}

fn need_three(alg: &Algebra) -> Result<()> {
    if alg.size() != 3 {
        return Err(Error::invalid("this search is defined on a 3-element domain"));
    }
    Ok(())
}

pub fn find_lemma_terms(alg: &Algebra, target: LemmaTarget, budget: &Budget) -> Result<SearchVerdict> {
    need_three(alg)?;
    let spec = target.spec();
    find_term_matching(alg, spec.arity(), &spec, budget)
}

/// One regime of the two-term condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZhukRegime {
    pub r3: SearchVerdict,
    pub p: SearchVerdict,
}

impl ZhukRegime {
    pub fn outcome(&self) -> Outcome {
        match (self.r3.outcome, self.p.outcome) {
            (Outcome::Yes, Outcome::Yes) => Outcome::Yes,
            (Outcome::No, _) | (_, Outcome::No) => Outcome::No,
            _ => Outcome::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZhukReport {
    pub first: ZhukRegime,
    pub second: ZhukRegime,
}

impl ZhukReport {
    pub fn outcome(&self) -> Outcome {
        match (self.first.outcome(), self.second.outcome()) {
            (Outcome::Yes, _) | (_, Outcome::Yes) => Outcome::Yes,
            (Outcome::No, Outcome::No) => Outcome::No,
            _ => Outcome::Unknown,
        }
    }
}

pub const ZHUK_FIRST: (&str, &str) = ("aab=a,aba=a,abb=c", "ab=a,ac=c");
pub const ZHUK_SECOND: (&str, &str) = ("bab=b,bba=b,baa=c", "ab=b,cb=c");

/// Search for the ternary `r3` and binary `p` of both regimes.
pub fn check_zhuk_condition(alg: &Algebra, budget: &Budget) -> Result<ZhukReport> {
    need_three(alg)?;
    let d = Domain::default();
    let regime = |(r3, p): (&str, &str)| -> Result<ZhukRegime> {
        let r3 = PartialSpec::parse(&d, r3)?;
        let p = PartialSpec::parse(&d, p)?;
        Ok(ZhukRegime { r3: find_term_matching(alg, 3, &r3, budget)?, p: find_term_matching(alg, 2, &p, budget)? })
    };
    Ok(ZhukReport { first: regime(ZHUK_FIRST)?, second: regime(ZHUK_SECOND)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{algebra_rs, algebra_s};

    fn spec(s: &str) -> PartialSpec {
        PartialSpec::parse(&Domain::default(), s).unwrap()
    }

    #[test]
    fn spec_errors() {
        let d = Domain::default();
        assert!(PartialSpec::parse(&d, "ab=a,ab=b").is_err());
        assert!(PartialSpec::parse(&d, "ab=a,ab=a").is_err());
        assert!(PartialSpec::parse(&d, "ab=a,abc=a").is_err());
        assert!(PartialSpec::parse(&d, "").is_err());
    }

    #[test]
    fn term_search_examples() {
        let rs = algebra_rs();
        let v = find_term_matching(&rs, 2, &spec("ab=a,ac=c"), &Budget::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Yes);
        assert_eq!(v.witness.unwrap().render(&rs), "r(x0,x0,x0,x1)");
        let s = algebra_s();
        let v = find_term_matching(&s, 2, &spec("ab=a,ba=a"), &Budget::default()).unwrap();
        assert_eq!(v.outcome, Outcome::No);
        let v = find_term_matching(&s, 2, &spec("ab=b,ba=a"), &Budget::default()).unwrap();
        assert_eq!(v.witness, Some(Term::Var(1)));
    }

    #[test]
    fn zhuk_examples() {
        let z = check_zhuk_condition(&algebra_rs(), &Budget::default()).unwrap();
        let rs = algebra_rs();
        assert_eq!(z.first.outcome(), Outcome::Yes);
        assert_eq!(z.first.r3.witness.as_ref().unwrap().render(&rs), "r(x0,x0,x1,x2)");
        assert_eq!(z.first.p.witness.as_ref().unwrap().render(&rs), "r(x0,x0,x0,x1)");
        let z = check_zhuk_condition(&algebra_s(), &Budget::default()).unwrap();
        assert_eq!(z.first.outcome(), Outcome::No);
        assert_eq!(z.second.outcome(), Outcome::No);
    }

    #[test]
    fn lemma_targets() {
        let rs = algebra_rs();
        assert_eq!(find_lemma_terms(&rs, LemmaTarget::R4A, &Budget::default()).unwrap().outcome, Outcome::Yes);
        assert_eq!(find_lemma_terms(&algebra_s(), LemmaTarget::P1, &Budget::default()).unwrap().outcome, Outcome::No);
    }
}

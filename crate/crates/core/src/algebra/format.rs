//! Line-oriented text format.
//!
//! ```text
//! # comment
//! domain 3 a b c
//! op s 2 a c c c b c c c c
//! rel rho 2 ab;ba
//! algebra gap s
//! ```

use indexmap::IndexMap;

use super::{Algebra, Domain, Operation, Relation};
use crate::error::{Error, Result};

/// Everything declared in one file, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub domain: Domain,
    pub ops: IndexMap<String, Operation>,
    pub rels: IndexMap<String, Relation>,
    pub algebras: IndexMap<String, Algebra>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = Document::default();
        let mut seen_decl = false;
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            match words[0] {
                "domain" => {
                    if seen_decl {
                        return Err(Error::parse(line, "domain must come before other declarations"));
                    }
                    let n: usize = words
                        .get(1)
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| Error::parse(line, "domain needs a size"))?;
                    let names: Vec<&str> = words[2..].to_vec();
                    let names = if names.is_empty() {
                        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
                    } else {
                        names.iter().map(|s| s.to_string()).collect::<Vec<_>>()
                    };
                    if names.len() != n {
                        return Err(Error::parse(line, format!("domain size {n} but {} names", names.len())));
                    }
                    doc.domain = Domain::new(names).map_err(|e| Error::parse(line, e.to_string()))?;
                }
                "op" => {
                    seen_decl = true;
                    if words.len() < 3 {
                        return Err(Error::parse(line, "usage: op <name> <arity> <symbols…>"));
                    }
                    let name = words[1].to_string();
                    let arity: usize = words[2].parse().map_err(|_| Error::parse(line, "arity must be an integer"))?;
                    let table = words[3..]
                        .iter()
                        .map(|w| doc.domain.index(w))
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| Error::parse(line, e.to_string()))?;
                    let op = Operation::from_table(name.clone(), doc.domain.size(), arity, table)
                        .map_err(|e| Error::parse(line, e.to_string()))?;
                    if doc.ops.insert(name.clone(), op).is_some() {
                        return Err(Error::parse(line, format!("operation `{name}` declared twice")));
                    }
                }
                "rel" => {
                    seen_decl = true;
                    if words.len() < 3 {
                        return Err(Error::parse(line, "usage: rel <name> <arity> <tuples>"));
                    }
                    let name = words[1].to_string();
                    let arity: usize = words[2].parse().map_err(|_| Error::parse(line, "arity must be an integer"))?;
                    let body: String = words[3..].concat();
                    let mut rel = Relation::empty(name.clone(), doc.domain.size(), arity)
                        .map_err(|e| Error::parse(line, e.to_string()))?;
                    for tok in body.split(';').filter(|t| !t.is_empty()) {
                        let t = doc.domain.parse_tuple(tok).map_err(|e| Error::parse(line, e.to_string()))?;
                        rel.insert(&t).map_err(|e| Error::parse(line, format!("tuple `{tok}`: {e}")))?;
                    }
                    if doc.rels.insert(name.clone(), rel).is_some() {
                        return Err(Error::parse(line, format!("relation `{name}` declared twice")));
                    }
                }
                "algebra" => {
                    seen_decl = true;
                    let name = words.get(1).ok_or_else(|| Error::parse(line, "algebra needs a name"))?.to_string();
                    let basis = words[2..]
                        .iter()
                        .map(|w| {
                            doc.ops
                                .get(*w)
                                .cloned()
                                .ok_or_else(|| Error::parse(line, format!("unknown operation `{w}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let alg = Algebra::new(name.clone(), doc.domain.clone(), basis)
                        .map_err(|e| Error::parse(line, e.to_string()))?;
                    if doc.algebras.insert(name.clone(), alg).is_some() {
                        return Err(Error::parse(line, format!("algebra `{name}` declared twice")));
                    }
                }
                other => return Err(Error::parse(line, format!("unknown declaration `{other}`"))),
            }
        }
        Ok(doc)
    }

    pub fn render(&self) -> String {
        let mut out = format!("domain {} {}\n", self.domain.size(), self.domain.names().join(" "));
        for op in self.ops.values() {
            out.push_str(&render_op(&self.domain, op));
            out.push('\n');
        }
        for rel in self.rels.values() {
            out.push_str(&render_rel(&self.domain, rel));
            out.push('\n');
        }
        for alg in self.algebras.values() {
            let names: Vec<&str> = alg.basis().iter().map(Operation::name).collect();
            out.push_str(&format!("algebra {} {}\n", alg.name(), names.join(" ")));
        }
        out
    }

    /// Collects an algebra together with the operations it uses.
    pub fn add_algebra(&mut self, alg: &Algebra) {
        self.domain = alg.domain().clone();
        for f in alg.basis() {
            self.ops.insert(f.name().to_string(), f.clone());
        }
        self.algebras.insert(alg.name().to_string(), alg.clone());
    }
}

pub fn render_op(d: &Domain, op: &Operation) -> String {
    let mut s = format!("op {} {}", op.name(), op.arity());
    for &e in op.table() {
        s.push(' ');
        s.push_str(d.name(e));
    }
    s
}

pub fn render_rel(d: &Domain, rel: &Relation) -> String {
    let body: Vec<String> = rel
        .tuples()
        .map(|t| {
            if d.single_char() {
                d.fmt_tuple(&t)
            } else {
                t.iter().map(|&e| d.name(e)).collect::<Vec<_>>().join(",")
            }
        })
        .collect();
    let mut s = format!("rel {} {}", rel.name(), rel.arity());
    if !body.is_empty() {
        s.push(' ');
        s.push_str(&body.join(";"));
    }
    s
}

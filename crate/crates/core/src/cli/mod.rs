//! Command line front end.
//!
//! Every subcommand ends with one summary record carrying a `verdict`
//! field; the process exit code is derived from it (0 YES/TRUE/PASS,
//! 1 NO/FALSE/FAIL, 2 UNKNOWN, 3 usage or parse error).

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};

use crate::adversary::{
    f_composable, generates_power, is_k_collapsible_at, is_k_switchable_at, min_generating_size, Adversary, Step,
};
use crate::algebra::format::{render_op, Document};
use crate::algebra::{Algebra, Domain, Operation, Relation};
use crate::clone::{
    check_zhuk_condition, classify_coordinates, find_term_matching, free_algebra, is_alpha_beta_projective,
    is_generalized_hubie_pol, render_report, PartialSpec, SearchVerdict,
};
use crate::error::{Error, Result};
use crate::gallery::{
    gap_algebra_check, named, parse_named_algebra, verify_lemma, LemmaId, NamedOp, Status, VerifyParams, ALL_LEMMAS,
};
use crate::relations::{enumerate_invariants, essential_tuples, preserves, rho_tilde, verify_fn_lemma};
use crate::{Budget, Outcome};

/// Largest derivation tree unfolded into a witness term.
const TERM_CAP: usize = 4096;

#[derive(Parser, Debug)]
#[command(name = "clonelab", version, about = "Clones, invariants and adversaries on small finite domains")]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 2015)]
    seed: u64,
    /// One `key=value` record per line.
    #[arg(long, global = true)]
    machine: bool,
    /// Resource budget: a table count or `tables=N,work=N,seconds=N`.
    /// Overrides CLONELAB_BUDGET.
    #[arg(long, global = true)]
    budget: Option<String>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// Named operations (`r,s`), `FILE:NAME`, or a file declaring one algebra.
    #[arg(long)]
    algebra: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an operation on one argument tuple.
    Eval {
        #[arg(long)]
        op: String,
        #[arg(long)]
        args: String,
    },
    /// Enumerate the term operations of a given arity.
    Clone {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        arity: usize,
        /// Also print every term operation.
        #[arg(long)]
        list: bool,
    },
    /// Find a term operation matching a partial table such as `ab=a,ac=c`.
    TermSearch {
        #[arg(long, default_value = "r,s")]
        algebra: String,
        #[arg(long)]
        spec: String,
    },
    /// Search for the two-term condition in both regimes.
    Zhuk {
        #[arg(long, default_value = "r,s")]
        algebra: String,
    },
    /// αβ-projectivity of every basis operation.
    Projective {
        #[arg(long, default_value = "s,t")]
        algebra: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Classify coordinates by the a→b and b→a breaks on {a,b}.
    Classify {
        #[arg(long)]
        op: String,
    },
    /// Generalised Hubie-pol test.
    Hubie {
        #[arg(long)]
        op: String,
        /// Pinning word, one element per coordinate.
        #[arg(long, conflicts_with = "z")]
        word: Option<String>,
        /// Pin every coordinate to this element.
        #[arg(long)]
        z: Option<String>,
    },
    /// Does an operation preserve a relation?
    Preserves {
        #[arg(long)]
        op: String,
        /// Brace literal `{(a,b),(b,a)}`, `FILE:NAME`, or a file declaring one relation.
        #[arg(long)]
        rel: String,
    },
    /// Invariant relations of a given arity.
    Inv {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        list: bool,
    },
    /// Essential tuples of a relation.
    Essential {
        #[arg(long)]
        rel: String,
    },
    /// Preservation of low-arity invariants by the a- or b-variant.
    VerifyFn {
        #[arg(long, default_value = "r,s")]
        algebra: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        hatted: bool,
        #[arg(long, default_value_t = 3)]
        hmax: usize,
    },
    /// f-composability of a target adversary from source adversaries.
    Compose {
        #[arg(long)]
        op: String,
        #[arg(long)]
        target: String,
        /// Source adversaries separated by `;`.
        #[arg(long)]
        sources: String,
    },
    /// k-collapsibility from a source set at a fixed m.
    Collapsible {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        k: usize,
        /// Source set, e.g. `a,b` or `D`.
        #[arg(long)]
        source: String,
    },
    /// Tuple-level k-switchability at a fixed m.
    Switchable {
        #[arg(long, default_value = "r,s")]
        algebra: String,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        k: usize,
    },
    /// Minimal generating-set size of the m-th power.
    Mingen {
        #[arg(long, default_value = "s")]
        algebra: String,
        #[arg(short)]
        m: usize,
    },
    /// Named operations and their tables.
    Gallery {
        #[arg(long)]
        op: Option<String>,
        #[arg(long, default_value = "table", value_parser = ["table", "rows"])]
        emit: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        lemma: Vec<String>,
        #[arg(long)]
        all: bool,
        /// Random samples for sampled suites.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Check the global assumptions of a three-element Gap Algebra.
    GapCheck {
        #[command(flatten)]
        alg: AlgebraArg,
    },
}

/// Collects records and renders them for people or for machines.
struct Out {
    machine: bool,
    lines: Vec<String>,
}

fn clean(v: &str) -> String {
    v.replace(char::is_whitespace, "_")
}

impl Out {
    fn rec(&mut self, kind: &str, fields: &[(&str, String)]) {
        let sep = if self.machine { " " } else { "  " };
        let body: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={}", clean(v))).collect();
        if self.machine {
            self.lines.push(format!("{kind}{sep}{}", body.join(sep)));
        } else {
            self.lines.push(format!("{kind:<15} {}", body.join(sep)));
        }
    }

    fn raw(&mut self, line: String) {
        self.lines.push(line);
    }
}

fn tf(b: bool) -> &'static str {
    if b {
        "TRUE"
    } else {
        "FALSE"
    }
}

fn outcome_code(o: Outcome) -> i32 {
    o.exit_code()
}

/// Split `FILE:NAME` when `FILE` exists.
fn file_ref(s: &str) -> Option<(&str, Option<&str>)> {
    if Path::new(s).is_file() {
        return Some((s, None));
    }
    let (f, n) = s.rsplit_once(':')?;
    Path::new(f).is_file().then_some((f, Some(n)))
}

fn load_doc(path: &str) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{path}: {e}")))?;
    Document::parse(&text).map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse { line, msg: format!("{path}: {msg}") },
        other => other,
    })
}

fn pick<'a, T>(map: &'a indexmap::IndexMap<String, T>, name: Option<&str>, what: &str, path: &str) -> Result<&'a T> {
    match name {
        Some(n) => map.get(n).ok_or_else(|| Error::UnknownName(format!("{what} `{n}` in {path}"))),
        None if map.len() == 1 => Ok(&map[0]),
        None => Err(Error::invalid(format!("{path} declares {} {what}s; name one with {path}:NAME", map.len()))),
    }
}

fn load_algebra(s: &str) -> Result<Algebra> {
    match file_ref(s) {
        Some((path, name)) => {
            let doc = load_doc(path)?;
            pick(&doc.algebras, name, "algebra", path).cloned()
        }
        None => parse_named_algebra(s),
    }
}

fn load_op(s: &str) -> Result<Operation> {
    match file_ref(s) {
        Some((path, name)) => {
            let doc = load_doc(path)?;
            pick(&doc.ops, name, "operation", path).cloned()
        }
        None => named(s.parse::<NamedOp>()?),
    }
}

fn load_rel(s: &str, d: &Domain) -> Result<Relation> {
    if s.trim_start().starts_with('{') {
        return Ok(Relation::parse_braces(s, d, None)?.renamed("rho"));
    }
    match file_ref(s) {
        Some((path, name)) => {
            let doc = load_doc(path)?;
            pick(&doc.rels, name, "relation", path).cloned()
        }
        None => Err(Error::invalid(format!("`{s}` is neither a brace literal nor a readable file"))),
    }
}

fn mask(d: &Domain, s: &str) -> Result<u8> {
    d.parse_mask(&s.replace(',', "|"))
}

fn search_fields(alg: &Algebra, v: &SearchVerdict) -> Vec<(&'static str, String)> {
    let mut f = vec![("verdict", v.outcome.to_string()), ("explored", v.explored.to_string())];
    if let Some(t) = &v.witness {
        f.push(("term", t.render(alg)));
    }
    f
}

fn dispatch(cli: Cli, budget: &Budget, out: &mut Out) -> Result<i32> {
    let machine = out.machine;
    match cli.cmd {
        Command::Eval { op, args } => {
            let f = load_op(&op)?;
            let d = Domain::new((0..f.size()).map(|i| ((b'a' + i as u8) as char).to_string()))?;
            let x = d.parse_tuple(&args)?;
            let v = f.eval(&x)?;
            if machine {
                out.rec("eval", &[("op", f.name().into()), ("args", d.fmt_tuple(&x)), ("value", d.name(v).into())]);
            } else {
                out.raw(d.name(v).to_string());
            }
            Ok(0)
        }
        Command::Clone { alg, arity, list } => {
            let alg = load_algebra(&alg.algebra)?;
            let free = free_algebra(&alg, arity, budget)?;
            if list {
                for (i, e) in free.elements().enumerate() {
                    let table: Vec<&str> = e.table.iter().map(|&v| alg.domain().name(v)).collect();
                    out.rec(
                        "term",
                        &[("index", i.to_string()), ("table", table.concat()), ("witness", e.witness.render(&alg))],
                    );
                }
            }
            let o = if free.complete { Outcome::Yes } else { Outcome::Unknown };
            out.rec(
                "clone",
                &[
                    ("algebra", alg.label()),
                    ("arity", arity.to_string()),
                    ("size", free.len().to_string()),
                    ("complete", free.complete.to_string()),
                    ("verdict", o.to_string()),
                ],
            );
            Ok(outcome_code(o))
        }
        Command::TermSearch { algebra, spec } => {
            let alg = load_algebra(&algebra)?;
            let spec = PartialSpec::parse(alg.domain(), &spec)?;
            let v = find_term_matching(&alg, spec.arity(), &spec, budget)?;
            let mut f = vec![("algebra", alg.label()), ("spec", spec.render(alg.domain()))];
            f.extend(search_fields(&alg, &v));
            out.rec("term-search", &f);
            Ok(outcome_code(v.outcome))
        }
        Command::Zhuk { algebra } => {
            let alg = load_algebra(&algebra)?;
            let z = check_zhuk_condition(&alg, budget)?;
            for (name, reg) in [("first", &z.first), ("second", &z.second)] {
                for (role, v) in [("r3", &reg.r3), ("p", &reg.p)] {
                    let mut f = vec![("regime", name.to_string()), ("role", role.to_string())];
                    f.extend(search_fields(&alg, v));
                    out.rec("zhuk-term", &f);
                }
                out.rec("zhuk-regime", &[("regime", name.into()), ("verdict", reg.outcome().to_string())]);
            }
            out.rec("zhuk", &[("algebra", alg.label()), ("verdict", z.outcome().to_string())]);
            Ok(outcome_code(z.outcome()))
        }
        Command::Projective { algebra, alpha, beta } => {
            let alg = load_algebra(&algebra)?;
            let d = alg.domain();
            let (a, b) = (mask(d, &alpha)?, mask(d, &beta)?);
            let rep = is_alpha_beta_projective(&alg, a, b)?;
            for line in render_report(d, &rep) {
                out.rec("projective-op", &[("detail", line)]);
            }
            out.rec(
                "projective",
                &[
                    ("algebra", alg.label()),
                    ("alpha", d.fmt_mask(a)),
                    ("beta", d.fmt_mask(b)),
                    ("verdict", tf(rep.projective).into()),
                ],
            );
            Ok(i32::from(!rep.projective))
        }
        Command::Classify { op } => {
            let f = load_op(&op)?;
            let d = Domain::default();
            for (i, r) in classify_coordinates(&f)?.iter().enumerate() {
                let show = |t: &Option<Vec<u8>>| t.as_ref().map_or("-".to_string(), |t| d.fmt_tuple(t));
                out.rec(
                    "coordinate",
                    &[
                        ("op", f.name().into()),
                        ("index", i.to_string()),
                        ("class", r.class.to_string()),
                        ("a_to_b", show(&r.a_to_b)),
                        ("b_to_a", show(&r.b_to_a)),
                    ],
                );
            }
            out.rec("classify", &[("op", f.name().into()), ("verdict", "YES".into())]);
            Ok(0)
        }
        Command::Hubie { op, word, z } => {
            let f = load_op(&op)?;
            let d = Domain::default();
            let w = match (word, z) {
                (Some(w), None) => d.parse_tuple(&w)?,
                (None, Some(z)) => vec![d.index(z.trim())?; f.arity()],
                _ => return Err(Error::invalid("give exactly one of --word and --z")),
            };
            let ok = is_generalized_hubie_pol(&f, &w)?;
            out.rec("hubie", &[("op", f.name().into()), ("word", d.fmt_tuple(&w)), ("verdict", tf(ok).into())]);
            Ok(i32::from(!ok))
        }
        Command::Preserves { op, rel } => {
            let f = load_op(&op)?;
            let d = Domain::new((0..f.size()).map(|i| ((b'a' + i as u8) as char).to_string()))?;
            let rho = load_rel(&rel, &d)?;
            let p = preserves(&f, &rho, budget)?;
            let mut fields = vec![("op", f.name().to_string()), ("rel", rho.fmt_braces(&d))];
            if let Some(cx) = &p.counterexample {
                let cols: Vec<String> = cx.columns.iter().map(|c| d.fmt_tuple(c)).collect();
                fields.push(("columns", cols.join(";")));
                fields.push(("result", d.fmt_tuple(&cx.result)));
            }
            fields.push(("verdict", tf(p.preserved).into()));
            out.rec("preserves", &fields);
            Ok(i32::from(!p.preserved))
        }
        Command::Inv { alg, arity, list } => {
            let alg = load_algebra(&alg.algebra)?;
            let set = enumerate_invariants(&alg, arity, budget)?;
            if list {
                for (i, r) in set.relations.iter().enumerate() {
                    out.rec("invariant", &[("index", i.to_string()), ("rel", r.fmt_braces(alg.domain()))]);
                }
            }
            let o = if set.complete { Outcome::Yes } else { Outcome::Unknown };
            out.rec(
                "inv",
                &[
                    ("algebra", alg.label()),
                    ("arity", arity.to_string()),
                    ("count", set.relations.len().to_string()),
                    ("complete", set.complete.to_string()),
                    ("verdict", o.to_string()),
                ],
            );
            Ok(outcome_code(o))
        }
        Command::Essential { rel } => {
            let d = Domain::default();
            let rho = load_rel(&rel, &d)?;
            let ess = essential_tuples(&rho)?;
            for e in &ess {
                out.rec("essential-tuple", &[("tuple", d.fmt_tuple(&e.tuple)), ("repairs", d.fmt_tuple(&e.repairs))]);
            }
            let tilde = rho_tilde(&rho)?;
            let found = !ess.is_empty();
            out.rec(
                "essential",
                &[
                    ("rel", rho.fmt_braces(&d)),
                    ("tuples", ess.len().to_string()),
                    ("tilde_equal", tilde.same_tuples(&rho).to_string()),
                    ("verdict", tf(found).into()),
                ],
            );
            Ok(i32::from(!found))
        }
        Command::VerifyFn { algebra, n, hatted, hmax } => {
            let alg = load_algebra(&algebra)?;
            let rep = verify_fn_lemma(&alg, n, hatted, hmax, budget)?;
            let d = alg.domain();
            for l in &rep.levels {
                let mut f = vec![
                    ("h", l.h.to_string()),
                    ("invariants", l.invariants.to_string()),
                    ("a_holds", l.a_holds.to_string()),
                    ("b_holds", l.b_holds.to_string()),
                    ("complete", l.complete.to_string()),
                ];
                for (tag, c) in [("a_counter", &l.a_counter), ("b_counter", &l.b_counter)] {
                    if let Some((rho, cx)) = c {
                        f.push((tag, format!("{}:{}", rho.fmt_braces(d), cx.render(d))));
                    }
                }
                out.rec("fn-level", &f);
            }
            let o = if !rep.complete() {
                Outcome::Unknown
            } else {
                Outcome::from_bool(rep.holds())
            };
            let uniform = rep.uniform().map_or("-".to_string(), |c| c.to_string());
            let verdict = match o {
                Outcome::Yes => "TRUE",
                Outcome::No => "FALSE",
                Outcome::Unknown => "UNKNOWN",
            };
            out.rec(
                "verify-fn",
                &[
                    ("algebra", alg.label()),
                    ("n", n.to_string()),
                    ("hatted", hatted.to_string()),
                    ("hmax", hmax.to_string()),
                    ("uniform", uniform),
                    ("verdict", verdict.into()),
                ],
            );
            Ok(outcome_code(o))
        }
        Command::Compose { op, target, sources } => {
            let f = load_op(&op)?;
            let d = Domain::default();
            let t = Adversary::parse(&d, &target)?;
            let srcs =
                sources.split(';').filter(|s| !s.trim().is_empty()).map(|s| Adversary::parse(&d, s)).collect::<Result<Vec<_>>>()?;
            let ok = f_composable(&f, &t, &srcs)?;
            out.rec(
                "compose",
                &[("op", f.name().into()), ("target", t.render(&d)), ("sources", srcs.len().to_string()), ("verdict", tf(ok).into())],
            );
            Ok(i32::from(!ok))
        }
        Command::Collapsible { alg, m, k, source } => {
            let alg = load_algebra(&alg.algebra)?;
            let d = alg.domain().clone();
            let src = mask(&d, &source)?;
            let v = is_k_collapsible_at(&alg, m, k, src, budget)?;
            let c = &v.closure;
            if let Some(der) = &c.derivation {
                for (i, st) in der.steps.iter().enumerate() {
                    let via = match &st.step {
                        Step::Source(j) => format!("source:{j}"),
                        Step::Apply { op, args } => {
                            let a: Vec<String> = args.iter().map(ToString::to_string).collect();
                            format!("{}({})", alg.basis()[*op].name(), a.join(","))
                        }
                    };
                    out.rec("step", &[("index", i.to_string()), ("adversary", st.adversary.render(&d)), ("via", via)]);
                }
                if let Some((t, leaves)) = der.term(TERM_CAP) {
                    let l: Vec<String> = leaves.iter().map(ToString::to_string).collect();
                    out.rec("derivation-term", &[("term", t.render(&alg)), ("leaves", l.join(","))]);
                }
            }
            out.rec(
                "collapsible",
                &[
                    ("algebra", alg.label()),
                    ("m", m.to_string()),
                    ("k", k.to_string()),
                    ("source", d.fmt_mask(src)),
                    ("sources", v.sources.len().to_string()),
                    ("family", c.family.len().to_string()),
                    ("rounds", c.rounds.to_string()),
                    ("verdict", v.outcome.to_string()),
                ],
            );
            Ok(outcome_code(v.outcome))
        }
        Command::Switchable { algebra, m, k } => {
            let alg = load_algebra(&algebra)?;
            let g = is_k_switchable_at(&alg, m, k, budget)?;
            out.rec(
                "switchable",
                &[
                    ("algebra", alg.label()),
                    ("m", m.to_string()),
                    ("k", k.to_string()),
                    ("closure", g.closure_size.to_string()),
                    ("universe", g.universe.to_string()),
                    ("verdict", g.outcome.to_string()),
                ],
            );
            Ok(outcome_code(g.outcome))
        }
        Command::Mingen { algebra, m } => {
            let alg = load_algebra(&algebra)?;
            let g = min_generating_size(&alg, m, budget)?;
            let w: Vec<String> = g.witness.iter().map(|t| alg.domain().fmt_tuple(t)).collect();
            let o = if g.exact { Outcome::Yes } else { Outcome::Unknown };
            // The witness is rechecked independently of the search.
            let check = generates_power(&alg, m, &g.witness, budget)?;
            out.rec(
                "mingen",
                &[
                    ("algebra", alg.label()),
                    ("m", m.to_string()),
                    ("lower", g.lower.to_string()),
                    ("upper", g.upper.to_string()),
                    ("exact", g.exact.to_string()),
                    ("witness", w.join(",")),
                    ("witness_generates", check.outcome.to_string()),
                    ("verdict", o.to_string()),
                ],
            );
            Ok(outcome_code(o))
        }
        Command::Gallery { op, emit } => {
            let d = Domain::default();
            let ops: Vec<Operation> = match op {
                Some(o) => vec![load_op(&o)?],
                None => ["s", "r", "t", "fa3", "fb3", "hfa2", "hfb2"]
                    .iter()
                    .map(|o| named(o.parse().expect("builtin name")))
                    .collect::<Result<_>>()?,
            };
            for f in &ops {
                if emit == "rows" {
                    for (x, v) in f.rows() {
                        out.rec("row", &[("op", f.name().into()), ("args", d.fmt_tuple(&x)), ("value", d.name(v).into())]);
                    }
                } else {
                    out.raw(render_op(&d, f));
                }
            }
            Ok(0)
        }
        Command::Verify { lemma, all, samples } => {
            let ids: Vec<LemmaId> = if all {
                ALL_LEMMAS.to_vec()
            } else {
                lemma.iter().map(|l| l.parse()).collect::<Result<_>>()?
            };
            let p = VerifyParams { seed: cli.seed, samples, budget: budget.clone() };
            use rayon::prelude::*;
            let reports = ids.par_iter().map(|&id| verify_lemma(id, &p)).collect::<Result<Vec<_>>>()?;
            let d = Domain::default();
            for r in &reports {
                for line in r.records(&d) {
                    out.raw(line);
                }
            }
            let status = Status::combine(reports.iter().map(|r| r.status));
            if reports.len() > 1 {
                out.raw(format!("verify lemmas={} status={status}", reports.len()));
            }
            Ok(status.exit_code())
        }
        Command::GapCheck { alg } => {
            let alg = load_algebra(&alg.algebra)?;
            let rep = gap_algebra_check(&alg)?;
            for r in &rep.reasons {
                out.rec("gap-reason", &[("reason", r.clone())]);
            }
            let subs: Vec<String> = rep.subuniverses.iter().map(|&m| alg.domain().fmt_mask(m)).collect();
            out.rec(
                "gap-check",
                &[
                    ("algebra", alg.label()),
                    ("subuniverses", subs.join(",")),
                    ("projective", rep.projectivity.projective.to_string()),
                    ("verdict", tf(rep.is_gap).into()),
                ],
            );
            Ok(i32::from(!rep.is_gap))
        }
    }
}

/// Parse `args` (including the program name), run, write records to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let budget = match &cli.budget {
        Some(s) => match Budget::parse(s) {
            Some(b) => b,
            None => {
                let _ = writeln!(err, "error: bad budget `{s}`");
                return 3;
            }
        },
        None => Budget::from_env(),
    };
    let mut o = Out { machine: cli.machine, lines: Vec::new() };
    let result = match cli.workers {
        Some(w) => crate::with_workers(w, || dispatch(cli, &budget, &mut o)),
        None => dispatch(cli, &budget, &mut o),
    };
    for line in &o.lines {
        let _ = writeln!(out, "{line}");
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            3
        }
    }
}

//! One-call verification suites for the finite instances of each lemma.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::named::{algebra_of, algebra_rs, algebra_s, algebra_st, named, NamedOp};
use crate::adversary::{is_k_collapsible_at, is_k_switchable_at, AdversaryFamily, Derivation};
use crate::algebra::{all_tuples, Algebra, Domain, Elem, Operation, Relation, Term, A, B, C};
use crate::budget::Budget;
use crate::clone::{
    check_zhuk_condition, clone_envelope, free_algebra, is_alpha_beta_projective, is_generalized_hubie_pol,
    pinned_image, PartialSpec, ProjectivityReport, SearchVerdict, ZHUK_FIRST,
};
use crate::error::{Error, Result};
use crate::relations::{
    check_double_c_property, essential_tuples, rho_tilde, verify_fn_lemma, EssentialTuple, FnLemmaReport,
    PreservationCounterexample,
};
use crate::subpower::subpower_closure;
use crate::verdict::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    StCollapse,
    StAcStruct,
    StCStruct,
    StNoSingleton,
    Chen,
    FnPreserve,
    HfnPreserve,
    FnHubie,
    Sushnabor,
    Micro,
    ZhukChen,
}

pub const ALL_LEMMAS: [LemmaId; 11] = [
    LemmaId::StCollapse,
    LemmaId::StAcStruct,
    LemmaId::StCStruct,
    LemmaId::StNoSingleton,
    LemmaId::Chen,
    LemmaId::FnPreserve,
    LemmaId::HfnPreserve,
    LemmaId::FnHubie,
    LemmaId::Sushnabor,
    LemmaId::Micro,
    LemmaId::ZhukChen,
];

impl LemmaId {
    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::StCollapse => "ST-COLLAPSE",
            LemmaId::StAcStruct => "ST-AC-STRUCT",
            LemmaId::StCStruct => "ST-C-STRUCT",
            LemmaId::StNoSingleton => "ST-NO-SINGLETON",
            LemmaId::Chen => "CHEN",
            LemmaId::FnPreserve => "FN-PRESERVE",
            LemmaId::HfnPreserve => "HFN-PRESERVE",
            LemmaId::FnHubie => "FN-HUBIE",
            LemmaId::Sushnabor => "SUSHNABOR",
            LemmaId::Micro => "MICRO",
            LemmaId::ZhukChen => "ZHUK-CHEN",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        ALL_LEMMAS.into_iter().find(|l| l.as_str() == up).ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unknown => 2,
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// `Yes` is the expected answer.
    fn expect_yes(o: Outcome) -> Self {
        match o {
            Outcome::Yes => Status::Pass,
            Outcome::No => Status::Fail,
            Outcome::Unknown => Status::Unknown,
        }
    }

    /// `No` is the expected answer.
    fn expect_no(o: Outcome) -> Self {
        match o {
            Outcome::No => Status::Pass,
            Outcome::Yes => Status::Fail,
            Outcome::Unknown => Status::Unknown,
        }
    }

    pub fn combine(items: impl IntoIterator<Item = Status>) -> Status {
        let mut out = Status::Pass;
        for s in items {
            match s {
                Status::Fail => return Status::Fail,
                Status::Unknown => out = Status::Unknown,
                Status::Pass => {}
            }
        }
        out
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        })
    }
}

/// One elementary check inside a lemma suite.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Machine-checkable evidence attached to a report.
#[derive(Clone, Debug)]
pub enum Witness {
    /// A term whose operation matches `spec`.
    Term { label: String, algebra: Algebra, term: Term, spec: PartialSpec },
    /// A replayable adversary derivation of the full adversary.
    Derivation { label: String, algebra: Algebra, sources: AdversaryFamily, derivation: Derivation },
    /// A preservation counterexample.
    Counterexample { label: String, op: Operation, rel: Relation, cx: PreservationCounterexample },
    /// A generalised Hubie-pol certificate.
    HubiePol { label: String, op: Operation, word: Vec<Elem> },
    /// An essential tuple of a relation.
    Essential { label: String, rel: Relation, tuple: EssentialTuple },
}

impl Witness {
    pub fn label(&self) -> &str {
        match self {
            Witness::Term { label, .. }
            | Witness::Derivation { label, .. }
            | Witness::Counterexample { label, .. }
            | Witness::HubiePol { label, .. }
            | Witness::Essential { label, .. } => label,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Witness::Term { .. } => "term",
            Witness::Derivation { .. } => "derivation",
            Witness::Counterexample { .. } => "counterexample",
            Witness::HubiePol { .. } => "hubie-pol",
            Witness::Essential { .. } => "essential",
        }
    }

    /// Recheck from scratch.
    pub fn revalidate(&self) -> Result<()> {
        let ok = match self {
            Witness::Term { algebra, term, spec, .. } => {
                let op = algebra.materialize(term, spec.arity())?;
                spec.matches_table(op.table(), algebra.size())
            }
            Witness::Derivation { algebra, sources, derivation, .. } => {
                derivation.replay(algebra, sources)?;
                true
            }
            Witness::Counterexample { op, rel, cx, .. } => cx.recheck(op, rel),
            Witness::HubiePol { op, word, .. } => is_generalized_hubie_pol(op, word)?,
            Witness::Essential { rel, tuple, .. } => tuple.recheck(rel),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("witness {} failed revalidation", self.label())))
        }
    }

    fn summary(&self, d: &Domain) -> String {
        match self {
            Witness::Term { algebra, term, .. } => term.render(algebra),
            Witness::Derivation { derivation, .. } => format!("steps:{}", derivation.steps.len()),
            Witness::Counterexample { cx, .. } => {
                let cols: Vec<String> = cx.columns.iter().map(|c| d.fmt_tuple(c)).collect();
                format!("columns:{};result:{}", cols.join(","), d.fmt_tuple(&cx.result))
            }
            Witness::HubiePol { op, word, .. } => format!("{}@{}", op.name(), d.fmt_tuple(word)),
            Witness::Essential { rel, tuple, .. } => format!("{}:{}", rel.name(), d.fmt_tuple(&tuple.tuple)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub id: LemmaId,
    pub status: Status,
    pub params: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub witnesses: Vec<Witness>,
}

fn field(s: &str) -> String {
    s.replace(char::is_whitespace, "_")
}

impl LemmaReport {
    fn new(id: LemmaId, params: Vec<(String, String)>, checks: Vec<Check>, witnesses: Vec<Witness>) -> Self {
        let status = Status::combine(checks.iter().map(|c| c.status));
        LemmaReport { id, status, params, checks, witnesses }
    }

    /// Recheck every attached witness.
    pub fn revalidate(&self) -> Result<()> {
        self.witnesses.iter().try_for_each(Witness::revalidate)
    }

    /// One line per check and witness, then a summary line.
    pub fn records(&self, d: &Domain) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.checks {
            out.push(format!(
                "lemma={} check={} status={} detail={}",
                self.id,
                field(&c.name),
                c.status,
                field(&c.detail)
            ));
        }
        for w in &self.witnesses {
            let valid = w.revalidate().is_ok();
            out.push(format!(
                "lemma={} witness={} kind={} valid={} value={}",
                self.id,
                field(w.label()),
                w.kind(),
                valid,
                field(&w.summary(d))
            ));
        }
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        out.push(format!(
            "lemma={} status={} checks={} witnesses={} params={}",
            self.id,
            self.status,
            self.checks.len(),
            self.witnesses.len(),
            field(&params.join(";"))
        ));
        out
    }
}

/// Parameters shared by the suites. Defaults are fixed so that reports are
/// reproducible.
#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub seed: u64,
    pub samples: usize,
    pub budget: Budget,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { seed: 2015, samples: 1000, budget: Budget::default() }
    }
}

/// Run one suite.
pub fn verify_lemma(id: LemmaId, p: &VerifyParams) -> Result<LemmaReport> {
    match id {
        LemmaId::StCollapse => st_collapse(p),
        LemmaId::StAcStruct => st_structural(p, LemmaId::StAcStruct),
        LemmaId::StCStruct => st_structural(p, LemmaId::StCStruct),
        LemmaId::StNoSingleton => st_no_singleton(p),
        LemmaId::Chen => chen(p),
        LemmaId::FnPreserve => fn_preserve(p, false),
        LemmaId::HfnPreserve => fn_preserve(p, true),
        LemmaId::FnHubie => fn_hubie(p),
        LemmaId::Sushnabor => sushnabor(p),
        LemmaId::Micro => micro(p),
        LemmaId::ZhukChen => zhuk_chen(p),
    }
}

/// Every suite, in canonical order; suites run concurrently.
pub fn verify_all(p: &VerifyParams) -> Result<Vec<LemmaReport>> {
    ALL_LEMMAS.par_iter().map(|&id| verify_lemma(id, p)).collect()
}

fn param(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn src_name(d: &Domain, mask: u8) -> String {
    d.fmt_mask(mask)
}

fn collapse_check(
    alg: &Algebra,
    m: usize,
    k: usize,
    source: u8,
    expect_yes: bool,
    p: &VerifyParams,
    witnesses: &mut Vec<Witness>,
) -> Result<Check> {
    let d = alg.domain();
    let v = is_k_collapsible_at(alg, m, k, source, &p.budget)?;
    let name = format!("collapsible[{}:m={m},k={k},source={}]", alg.label(), src_name(d, source));
    if let Some(der) = &v.closure.derivation {
        witnesses.push(Witness::Derivation {
            label: name.clone(),
            algebra: alg.clone(),
            sources: v.sources.clone(),
            derivation: der.clone(),
        });
    }
    let status = if expect_yes { Status::expect_yes(v.outcome) } else { Status::expect_no(v.outcome) };
    let detail = format!("verdict={},family={},rounds={}", v.outcome, v.closure.family.len(), v.closure.rounds);
    Ok(Check { name, status, detail })
}

fn st_collapse(p: &VerifyParams) -> Result<LemmaReport> {
    let st = algebra_st();
    let t = st.basis()[st.op_index("t").expect("t in basis")].clone();
    let g = st.s_double(&t)?;
    let d = st.domain().clone();
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    for (word, value) in [("aabbaabb", B), ("aabbbbaa", A)] {
        let w = d.parse_tuple(word)?;
        let ok = is_generalized_hubie_pol(&g, &w)?;
        checks.push(Check {
            name: format!("hubie-pol[{}:{word}]", g.name()),
            status: Status::of(ok),
            detail: format!("maps-to={},value={}", d.name(value), d.name(g.apply(&w))),
        });
        if ok {
            witnesses.push(Witness::HubiePol { label: format!("{}:{word}", g.name()), op: g.clone(), word: w });
        }
    }
    for m in 8..=11 {
        checks.push(collapse_check(&st, m, 7, 0b011, true, p, &mut witnesses)?);
    }
    Ok(LemmaReport::new(
        LemmaId::StCollapse,
        vec![param("algebra", st.label()), param("k", 7), param("m", "8..11"), param("source", "ab")],
        checks,
        witnesses,
    ))
}

const AC: u8 = 0b101;
const BC: u8 = 0b110;
const CC: u8 = 0b100;

/// Some coordinate pinned to {a,c} keeps b out and some coordinate pinned
/// to {b,c} keeps a out.
pub fn has_ac_bc_coordinates(f: &Operation) -> bool {
    let k = f.arity();
    (0..k).any(|i| pinned_image(f, i, AC) & (1 << B) == 0) && (0..k).any(|j| pinned_image(f, j, BC) & (1 << A) == 0)
}

/// Some coordinate pinned to {c} forces c.
pub fn has_c_coordinate(f: &Operation) -> bool {
    (0..f.arity()).any(|i| pinned_image(f, i, CC) == CC)
}

/// Largest free algebra attempted before falling back to the envelope.
const STRUCT_FREE_TABLES: usize = 20_000;

fn st_structural(p: &VerifyParams, id: LemmaId) -> Result<LemmaReport> {
    let st = algebra_st();
    let pred: fn(&Operation) -> bool = if id == LemmaId::StAcStruct { has_ac_bc_coordinates } else { has_c_coordinate };
    let mut checks = Vec::new();
    for m in [2usize, 3] {
        let free_budget = p.budget.clone().with_tables(STRUCT_FREE_TABLES.min(p.budget.max_tables));
        let free = free_algebra(&st, m, &Budget { max_time: None, ..free_budget })?;
        let (source, tables, complete): (&str, Vec<Vec<Elem>>, bool) = if free.complete {
            ("free", free.tables().map(<[Elem]>::to_vec).collect(), true)
        } else {
            // every term operation preserves the invariants, so the envelope
            // contains all of them
            let env = clone_envelope(&st, m, 3, &p.budget)?;
            ("envelope-h3", env.tables().map(<[Elem]>::to_vec).collect(), env.complete)
        };
        let mut bad = None;
        for (i, t) in tables.iter().enumerate() {
            let f = Operation::from_table("g", 3, m, t.clone())?;
            if !pred(&f) {
                bad = Some(i);
                break;
            }
        }
        let status = match (bad, source, complete) {
            (None, _, true) => Status::Pass,
            (None, _, false) => Status::Unknown,
            (Some(_), "free", _) => Status::Fail,
            (Some(_), _, _) => Status::Unknown,
        };
        let detail = match bad {
            None => format!("source={source},members={},all-qualify", tables.len()),
            Some(i) => format!("source={source},members={},first-offender={:?}", tables.len(), tables[i]),
        };
        checks.push(Check { name: format!("scan[{}:arity={m}]", st.label()), status, detail });
    }
    Ok(LemmaReport::new(
        id,
        vec![param("algebra", st.label()), param("arities", "2,3"), param("fallback", "envelope-h3")],
        checks,
        Vec::new(),
    ))
}

fn st_no_singleton(p: &VerifyParams) -> Result<LemmaReport> {
    let st = algebra_st();
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    for k in 1..=3 {
        for x in [A, B, C] {
            checks.push(collapse_check(&st, 2 * k + 2, k, 1 << x, false, p, &mut witnesses)?);
        }
    }
    Ok(LemmaReport::new(
        LemmaId::StNoSingleton,
        vec![param("algebra", st.label()), param("k", "1..3"), param("m", "2k+2"), param("source", "a|b|c")],
        checks,
        witnesses,
    ))
}

fn chen(p: &VerifyParams) -> Result<LemmaReport> {
    let rs = algebra_rs();
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    for m in 4..=8 {
        let g = is_k_switchable_at(&rs, m, 2, &p.budget)?;
        checks.push(Check {
            name: format!("switchable[{}:m={m},k=2]", rs.label()),
            status: Status::expect_yes(g.outcome),
            detail: format!("closure={}/{}", g.closure_size, g.universe),
        });
    }
    for k in 1..=3 {
        checks.push(collapse_check(&rs, 2 * k + 2, k, rs.domain().full_mask(), false, p, &mut witnesses)?);
    }
    Ok(LemmaReport::new(
        LemmaId::Chen,
        vec![
            param("algebra", rs.label()),
            param("switch", "k=2,m=4..8"),
            param("collapse", "k=1..3,m=2k+2,source=D"),
        ],
        checks,
        witnesses,
    ))
}

fn fn_checks(rep: &FnLemmaReport, rs: &Algebra, witnesses: &mut Vec<Witness>) -> Result<Vec<Check>> {
    let (fa, fb) = if rep.hatted {
        (named(NamedOp::HFA(rep.n))?, named(NamedOp::HFB(rep.n))?)
    } else {
        (named(NamedOp::FA(rep.n))?, named(NamedOp::FB(rep.n))?)
    };
    let mut checks = Vec::new();
    for l in &rep.levels {
        let status = if !l.complete {
            Status::Unknown
        } else {
            Status::of(l.a_holds || l.b_holds)
        };
        checks.push(Check {
            name: format!("level[{}:{}/{},h={}]", rs.label(), fa.name(), fb.name(), l.h),
            status,
            detail: format!(
                "invariants={},a-variant={},b-variant={},complete={}",
                l.invariants, l.a_holds, l.b_holds, l.complete
            ),
        });
        for (op, c) in [(&fa, &l.a_counter), (&fb, &l.b_counter)] {
            if let Some((rel, cx)) = c {
                witnesses.push(Witness::Counterexample {
                    label: format!("{}:h={}", op.name(), l.h),
                    op: op.clone(),
                    rel: rel.clone(),
                    cx: cx.clone(),
                });
            }
        }
    }
    Ok(checks)
}

fn fn_preserve(p: &VerifyParams, hatted: bool) -> Result<LemmaReport> {
    let rs = algebra_rs();
    let n = if hatted { 2 } else { 3 };
    let rep = verify_fn_lemma(&rs, n, hatted, 3, &p.budget)?;
    let mut witnesses = Vec::new();
    let checks = fn_checks(&rep, &rs, &mut witnesses)?;
    let id = if hatted { LemmaId::HfnPreserve } else { LemmaId::FnPreserve };
    let uniform = rep.uniform().map_or("none".to_string(), |c| c.to_string());
    Ok(LemmaReport::new(
        id,
        vec![param("algebra", rs.label()), param("n", n), param("h", "1..3"), param("uniform", uniform)],
        checks,
        witnesses,
    ))
}

fn fn_hubie(p: &VerifyParams) -> Result<LemmaReport> {
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    for n in 3..=5 {
        for (spec, z) in [(NamedOp::FA(n), B), (NamedOp::FB(n), A)] {
            let f = named(spec)?;
            let word = vec![z; f.arity()];
            let ok = is_generalized_hubie_pol(&f, &word)?;
            checks.push(Check {
                name: format!("hubie-pol[{}:{}]", f.name(), Domain::default().fmt_tuple(&word)),
                status: Status::of(ok),
                detail: format!("arity={}", f.arity()),
            });
            if ok {
                witnesses.push(Witness::HubiePol { label: f.name().to_string(), op: f, word });
            }
        }
        let alg = algebra_of(&[NamedOp::FA(n)])?;
        for m in n + 1..=8 {
            checks.push(collapse_check(&alg, m, n, 1 << B, true, p, &mut witnesses)?);
        }
    }
    Ok(LemmaReport::new(
        LemmaId::FnHubie,
        vec![param("n", "3..5"), param("collapse", "algebra=(D;fa_n),k=n,m=n+1..8,source=b")],
        checks,
        witnesses,
    ))
}

fn sushnabor_one(rho: &Relation) -> Result<(bool, Option<EssentialTuple>)> {
    let ess = essential_tuples(rho)?;
    let tilde = rho_tilde(rho)?;
    let ok = ess.is_empty() == tilde.same_tuples(rho);
    Ok((ok, ess.into_iter().next()))
}

fn sushnabor(p: &VerifyParams) -> Result<LemmaReport> {
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    let first_essential = |rho: &Relation, e: Option<EssentialTuple>, w: &mut Vec<Witness>| {
        if w.is_empty() {
            if let Some(tuple) = e {
                w.push(Witness::Essential { label: rho.name().to_string(), rel: rho.clone(), tuple });
            }
        }
    };
    let binary: Vec<Vec<Elem>> = all_tuples(3, 2).collect();
    let mut bad = 0;
    let mut with_essential = 0;
    for bits in 1u32..(1 << 9) {
        let tuples = binary.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, t)| t);
        let rho = Relation::from_tuples(format!("bin{bits}"), 3, 2, tuples)?;
        let (ok, e) = sushnabor_one(&rho)?;
        bad += usize::from(!ok);
        with_essential += usize::from(e.is_some());
        first_essential(&rho, e, &mut witnesses);
    }
    checks.push(Check {
        name: "binary-exhaustive".into(),
        status: Status::of(bad == 0),
        detail: format!("relations=511,with-essential={with_essential},mismatches={bad}"),
    });
    let ternary: Vec<Vec<Elem>> = all_tuples(3, 3).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let (mut bad, mut with_essential, mut tested) = (0, 0, 0);
    while tested < p.samples {
        let bits: u32 = rng.gen::<u32>() & ((1 << 27) - 1);
        if bits == 0 {
            continue;
        }
        tested += 1;
        let tuples = ternary.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, t)| t);
        let rho = Relation::from_tuples(format!("ter{tested}"), 3, 3, tuples)?;
        let (ok, e) = sushnabor_one(&rho)?;
        bad += usize::from(!ok);
        with_essential += usize::from(e.is_some());
    }
    checks.push(Check {
        name: "ternary-random".into(),
        status: Status::of(bad == 0),
        detail: format!("relations={tested},with-essential={with_essential},mismatches={bad}"),
    });
    Ok(LemmaReport::new(
        LemmaId::Sushnabor,
        vec![param("binary", "all-511"), param("ternary", p.samples), param("seed", p.seed)],
        checks,
        witnesses,
    ))
}

/// A seeded random relation closed under the operations of `alg`.
pub fn random_invariant(alg: &Algebra, arity: usize, gens: usize, rng: &mut impl Rng) -> Result<Relation> {
    let size = alg.size();
    let g: Vec<Vec<Elem>> = (0..gens).map(|_| (0..arity).map(|_| rng.gen_range(0..size) as Elem).collect()).collect();
    let mut meter = Budget::unlimited().meter();
    let c = subpower_closure(alg, arity, &g, &mut meter)?;
    let tuples: Vec<Vec<Elem>> = c.set.iter().map(|x| crate::algebra::decode(x, size, arity)).collect();
    Relation::from_tuples("rho", size, arity, tuples)
}

fn micro(p: &VerifyParams) -> Result<LemmaReport> {
    let alg = algebra_s();
    let s = alg.basis()[0].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let (mut bad, mut not_invariant, mut with_essential) = (0, 0, 0);
    let mut first_bad = String::new();
    for i in 0..p.samples {
        let arity = rng.gen_range(1..=3);
        let gens = rng.gen_range(1..=4);
        let rho = random_invariant(&alg, arity, gens, &mut rng)?.renamed(format!("inv{i}"));
        let dc = check_double_c_property(&rho, &s)?;
        not_invariant += usize::from(!dc.preserved_by_s);
        with_essential += usize::from(!essential_tuples(&rho)?.is_empty());
        if !dc.offending.is_empty() {
            bad += 1;
            if first_bad.is_empty() {
                first_bad = rho.fmt_braces(alg.domain());
            }
        }
    }
    let status = Status::of(bad == 0 && not_invariant == 0);
    let mut detail = format!(
        "relations={},with-essential={with_essential},double-c={bad},not-invariant={not_invariant}",
        p.samples
    );
    if !first_bad.is_empty() {
        detail.push_str(&format!(",first={first_bad}"));
    }
    Ok(LemmaReport::new(
        LemmaId::Micro,
        vec![param("algebra", alg.label()), param("arity", "1..3"), param("samples", p.samples), param("seed", p.seed)],
        vec![Check { name: "random-invariants".into(), status, detail }],
        Vec::new(),
    ))
}

fn zhuk_chen(p: &VerifyParams) -> Result<LemmaReport> {
    let rs = algebra_rs();
    let z = check_zhuk_condition(&rs, &p.budget)?;
    let d = Domain::default();
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    let specs = [PartialSpec::parse(&d, ZHUK_FIRST.0)?, PartialSpec::parse(&d, ZHUK_FIRST.1)?];
    for ((label, v), spec) in [("r3", &z.first.r3), ("p", &z.first.p)].into_iter().zip(specs) {
        checks.push(search_check(&rs, label, v, &spec));
        if let Some(t) = &v.witness {
            witnesses.push(Witness::Term { label: label.to_string(), algebra: rs.clone(), term: t.clone(), spec });
        }
    }
    checks.push(Check {
        name: "second-regime".into(),
        status: Status::Pass,
        detail: format!("verdict={},informational", z.second.outcome()),
    });
    Ok(LemmaReport::new(
        LemmaId::ZhukChen,
        vec![param("algebra", rs.label()), param("regime", "first")],
        checks,
        witnesses,
    ))
}

fn search_check(alg: &Algebra, label: &str, v: &SearchVerdict, spec: &PartialSpec) -> Check {
    let detail = match &v.witness {
        Some(t) => format!("spec={},term={}", spec.render(alg.domain()), t.render(alg)),
        None => format!("spec={},explored={}", spec.render(alg.domain()), v.explored),
    };
    Check { name: format!("first-regime[{label}]"), status: Status::expect_yes(v.outcome), detail }
}

/// Global assumptions of a Gap Algebra on three elements.
#[derive(Clone, Debug)]
pub struct GapReport {
    pub is_gap: bool,
    pub reasons: Vec<String>,
    /// Nonempty subsets closed under every basis operation.
    pub subuniverses: Vec<u8>,
    pub projectivity: ProjectivityReport,
}

pub fn gap_algebra_check(alg: &Algebra) -> Result<GapReport> {
    if alg.size() != 3 {
        return Err(Error::invalid("Gap Algebras live on a 3-element domain"));
    }
    let d = alg.domain();
    let mut reasons = Vec::new();
    let s = named(NamedOp::S)?;
    if !alg.basis().iter().any(|f| f.arity() == 2 && f.table() == s.table()) {
        reasons.push("basis lacks the semilattice s".to_string());
    }
    for f in alg.basis() {
        if !f.is_idempotent() {
            reasons.push(format!("{} is not idempotent", f.name()));
        }
    }
    let subuniverses: Vec<u8> = (1u8..8)
        .filter(|&m| alg.basis().iter().all(|f| f.image_of_masks(&vec![m; f.arity()]) & !m == 0))
        .collect();
    let expected: Vec<u8> = vec![0b001, 0b010, 0b100, 0b101, 0b110, 0b111];
    if subuniverses != expected {
        let got: Vec<String> = subuniverses.iter().map(|&m| d.fmt_mask(m)).collect();
        reasons.push(format!("subuniverses are {{{}}}, not a,b,c,ac,bc,abc", got.join(",")));
    }
    let projectivity = is_alpha_beta_projective(alg, AC, BC)?;
    Ok(GapReport { is_gap: reasons.is_empty(), reasons, subuniverses, projectivity })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in ALL_LEMMAS {
            assert_eq!(id.as_str().parse::<LemmaId>().unwrap(), id);
        }
        assert!("NOPE".parse::<LemmaId>().is_err());
    }

    #[test]
    fn gap_examples() {
        let g = gap_algebra_check(&algebra_rs()).unwrap();
        assert!(g.is_gap && !g.projectivity.projective);
        let g = gap_algebra_check(&algebra_s()).unwrap();
        assert!(g.is_gap && g.projectivity.projective);
        let g = gap_algebra_check(&algebra_of(&[NamedOp::R]).unwrap()).unwrap();
        assert!(!g.is_gap);
    }

    #[test]
    fn structural_predicates_on_basis() {
        for f in algebra_st().basis() {
            assert!(has_ac_bc_coordinates(f) && has_c_coordinate(f), "{}", f.name());
        }
    }

    #[test]
    fn quick_suites_pass() {
        let p = VerifyParams { samples: 50, ..VerifyParams::default() };
        for id in [LemmaId::Sushnabor, LemmaId::Micro, LemmaId::ZhukChen, LemmaId::StCollapse] {
            let r = verify_lemma(id, &p).unwrap();
            assert_eq!(r.status, Status::Pass, "{id}: {:?}", r.checks);
            r.revalidate().unwrap();
        }
    }
}

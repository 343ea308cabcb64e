//! Reachability closure of adversary families.
//!
//! Members are kept dominance-reduced. When the source family is closed
//! under coordinate permutations, every member is stored once per orbit as
//! its sorted representative, argument matrices are enumerated with sorted
//! rows only, and dominance is checked up to permutation. Partial argument
//! matrices are discarded as soon as their upper-bound image (unchosen
//! columns read as `D`) is already dominated.

use std::collections::{HashMap, HashSet};

use super::family::{Adversary, AdversaryFamily, ADVERSARY_CAP};
use crate::algebra::{Algebra, Operation, Term};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::verdict::Outcome;

/// Largest per-operation image table, in entries.
const IMAGE_TABLE_LIMIT: usize = 1 << 24;

/// How a member of the closure was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Index into the source family.
    Source(usize),
    /// Basis operation applied to earlier steps.
    Apply { op: usize, args: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub adversary: Adversary,
    pub step: Step,
}

/// A replayable straight-line derivation; the last step is the goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<DerivationStep>,
}

impl Derivation {
    pub fn goal(&self) -> &Adversary {
        &self.steps.last().expect("derivations are nonempty").adversary
    }

    /// Check every step from scratch: sources are members of `sources`,
    /// every application is composable and the goal is full.
    pub fn replay(&self, alg: &Algebra, sources: &AdversaryFamily) -> Result<()> {
        let full = alg.domain().full_mask();
        for (i, st) in self.steps.iter().enumerate() {
            match &st.step {
                Step::Source(j) => {
                    if sources.members.get(*j) != Some(&st.adversary) {
                        return Err(Error::invalid(format!("step {i}: not source {j}")));
                    }
                }
                Step::Apply { op, args } => {
                    let f = alg.basis().get(*op).ok_or_else(|| Error::invalid(format!("step {i}: no op {op}")))?;
                    if args.iter().any(|&a| a >= i) {
                        return Err(Error::invalid(format!("step {i}: forward reference")));
                    }
                    let srcs: Vec<Adversary> = args.iter().map(|&a| self.steps[a].adversary.clone()).collect();
                    if !super::family::f_composable(f, &st.adversary, &srcs)? {
                        return Err(Error::invalid(format!("step {i}: not composable")));
                    }
                }
            }
        }
        if !self.goal().is_full(full) {
            return Err(Error::invalid("derivation does not end in the full adversary"));
        }
        Ok(())
    }

    /// Unfold into a term with one fresh variable per leaf. Returns the
    /// term and, per variable, the index of the source it reads. `None`
    /// when the tree exceeds `cap` nodes.
    pub fn term(&self, cap: usize) -> Option<(Term, Vec<usize>)> {
        let mut sizes = vec![0usize; self.steps.len()];
        for (i, st) in self.steps.iter().enumerate() {
            sizes[i] = match &st.step {
                Step::Source(_) => 1,
                Step::Apply { args, .. } => args.iter().fold(1usize, |acc, &a| acc.saturating_add(sizes[a])),
            };
        }
        if sizes[self.steps.len() - 1] > cap {
            return None;
        }
        let mut leaves = Vec::new();
        Some((self.unfold(self.steps.len() - 1, &mut leaves), leaves))
    }

    fn unfold(&self, i: usize, leaves: &mut Vec<usize>) -> Term {
        match &self.steps[i].step {
            Step::Source(j) => {
                leaves.push(*j);
                Term::Var(leaves.len() - 1)
            }
            Step::Apply { op, args } => Term::App(*op, args.iter().map(|&a| self.unfold(a, leaves)).collect()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AdversaryClosure {
    /// Dominance-reduced members; sorted orbit representatives when
    /// `symmetric`.
    pub family: AdversaryFamily,
    pub symmetric: bool,
    pub reached_full: bool,
    /// The fixpoint was reached (or the goal found) within budget.
    pub complete: bool,
    pub rounds: usize,
    pub work: u64,
    pub derivation: Option<Derivation>,
}

impl AdversaryClosure {
    pub fn outcome(&self) -> Outcome {
        if self.reached_full {
            Outcome::Yes
        } else if self.complete {
            Outcome::No
        } else {
            Outcome::Unknown
        }
    }
}

enum Origin {
    Source(usize),
    Apply { op: usize, args: Vec<Vec<u8>> },
}

struct Node {
    key: Vec<u8>,
    origin: Origin,
}

struct Member {
    node: usize,
    sig: Vec<u8>,
    round: usize,
    dead: bool,
}

/// Image of one basis operation on products of subsets.
struct Images<'a> {
    op: &'a Operation,
    arity: usize,
    base: usize,
    table: Option<Vec<u8>>,
    /// `tails[c]`: index contribution of columns `c..` all equal to `D`.
    tails: Vec<usize>,
    full: u8,
}

impl<'a> Images<'a> {
    fn new(op: &'a Operation, full: u8) -> Self {
        let k = op.arity();
        let base = 1usize << op.size();
        let total = base.checked_pow(k as u32).filter(|&t| t <= IMAGE_TABLE_LIMIT);
        let table = total.map(|total| {
            let mut t = vec![0u8; total];
            let mut masks = vec![0u8; k];
            for idx in 0..total {
                let mut r = idx;
                for m in masks.iter_mut().rev() {
                    *m = (r % base) as u8;
                    r /= base;
                }
                if masks.contains(&0) {
                    continue;
                }
                // split the first non-singleton coordinate into two smaller masks
                match masks.iter().position(|&m| m & (m - 1) != 0) {
                    None => {
                        let args: Vec<u8> = masks.iter().map(|&m| m.trailing_zeros() as u8).collect();
                        t[idx] = 1 << op.apply(&args);
                    }
                    Some(j) => {
                        let low = masks[j] & masks[j].wrapping_neg();
                        let w = base.pow((k - 1 - j) as u32);
                        let with_low = idx - (masks[j] - low) as usize * w;
                        let without_low = idx - low as usize * w;
                        t[idx] = t[with_low] | t[without_low];
                    }
                }
            }
            t
        });
        let mut tails = vec![0usize; k + 1];
        for c in (0..k).rev() {
            tails[c] = tails[c + 1] + full as usize * base.pow((k - 1 - c) as u32);
        }
        Images { op, arity: k, base, table, tails, full }
    }

    /// Image with the first `c` columns given and the rest `D`. The table
    /// path reads `prefix_idx`; the fallback reads the explicit `prefix`.
    fn bound(&self, prefix_idx: usize, c: usize, prefix: &[u8]) -> u8 {
        match &self.table {
            Some(t) => t[prefix_idx * self.base.pow((self.arity - c) as u32) + self.tails[c]],
            None => {
                let mut sets = prefix.to_vec();
                sets.resize(self.arity, self.full);
                self.op.image_of_masks(&sets)
            }
        }
    }
}

struct Engine {
    m: usize,
    full: u8,
    symmetric: bool,
    /// Up-closed sets of subset values, as bitmasks over mask values;
    /// `None` when the domain is too large and matching is used instead.
    upsets: Option<Vec<u32>>,
    nodes: Vec<Node>,
    node_of: HashMap<Vec<u8>, usize>,
    seen: HashSet<Vec<u8>>,
    alive: Vec<Member>,
    meter: Meter,
    budget_hit: bool,
    goal: Option<usize>,
    round: usize,
    ticks: u32,
}

/// Per-operation enumeration context for one round.
struct OpCtx<'a> {
    op: usize,
    images: &'a Images<'a>,
    pool: Vec<Vec<u8>>,
    runs: Vec<Vec<(u8, usize)>>,
    new_from: usize,
}

/// Enumeration state for the current argument matrix.
struct Matrix {
    cols: Vec<Vec<u8>>,
    pre: Vec<Vec<usize>>,
    blocks: Vec<Vec<(usize, usize)>>,
}

fn upsets_for(size: usize) -> Option<Vec<u32>> {
    if size > 4 {
        return None;
    }
    let n = (1usize << size) - 1;
    let mut out = Vec::new();
    for u in 1u32..(1u32 << n) {
        // bit (v-1) stands for mask value v
        let closed = (1..=n).all(|v| {
            u >> (v - 1) & 1 == 0 || (1..=n).all(|w| w & v != v || u >> (w - 1) & 1 == 1)
        });
        if closed {
            out.push(u);
        }
    }
    Some(out)
}

/// Is there a bijection matching every coordinate of `x` into a superset
/// coordinate of `y`?
fn matching_dominated(x: &[u8], y: &[u8]) -> bool {
    let n = x.len();
    let mut owner = vec![usize::MAX; n];
    fn augment(i: usize, x: &[u8], y: &[u8], owner: &mut [usize], seen: &mut [bool]) -> bool {
        for j in 0..y.len() {
            if x[i] & !y[j] == 0 && !seen[j] {
                seen[j] = true;
                if owner[j] == usize::MAX || augment(owner[j], x, y, owner, seen) {
                    owner[j] = i;
                    return true;
                }
            }
        }
        false
    }
    (0..n).all(|i| {
        let mut seen = vec![false; n];
        augment(i, x, y, &mut owner, &mut seen)
    })
}

impl Engine {
    fn signature(&self, key: &[u8]) -> Vec<u8> {
        match &self.upsets {
            Some(ups) if self.symmetric => {
                ups.iter().map(|&u| key.iter().filter(|&&v| u >> (v - 1) & 1 == 1).count() as u8).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Is `key` (with signature `sig`) inside the member?
    fn below(&self, key: &[u8], sig: &[u8], mem: &Member) -> bool {
        let other = &self.nodes[mem.node].key;
        if !self.symmetric {
            return key.iter().zip(other).all(|(&a, &b)| a & !b == 0);
        }
        if self.upsets.is_some() {
            sig.iter().zip(&mem.sig).all(|(a, b)| a <= b)
        } else {
            matching_dominated(key, other)
        }
    }

    fn dominated(&self, key: &[u8], sig: &[u8]) -> bool {
        self.alive.iter().any(|mem| !mem.dead && self.below(key, sig, mem))
    }

    fn canonical(&self, v: &[u8]) -> Vec<u8> {
        let mut k = v.to_vec();
        if self.symmetric {
            k.sort_unstable();
        }
        k
    }

    fn tick(&mut self, n: u64) -> bool {
        if !self.meter.charge(n) {
            self.budget_hit = true;
            return false;
        }
        self.ticks += 1;
        if self.ticks & 0xfff == 0 && self.meter.out_of_time() {
            self.budget_hit = true;
            return false;
        }
        true
    }

    fn stopped(&self) -> bool {
        self.goal.is_some() || self.budget_hit
    }

    /// Offer a candidate; returns true when it joined the family.
    fn offer(&mut self, key: Vec<u8>, origin: Origin) -> bool {
        if !self.seen.insert(key.clone()) {
            return false;
        }
        let sig = self.signature(&key);
        if self.dominated(&key, &sig) {
            return false;
        }
        if !self.meter.tables_ok(self.nodes.len() + 1) {
            self.budget_hit = true;
            return false;
        }
        let node = self.nodes.len();
        let is_full = key.iter().all(|&c| c == self.full);
        self.node_of.insert(key.clone(), node);
        self.nodes.push(Node { key, origin });
        // drop members the newcomer dominates
        let probe = Member { node, sig: sig.clone(), round: 0, dead: false };
        for i in 0..self.alive.len() {
            let mem = &self.alive[i];
            if !mem.dead && self.below(&self.nodes[mem.node].key, &mem.sig, &probe) {
                self.alive[i].dead = true;
            }
        }
        self.alive.push(Member { node, sig, round: self.round, dead: false });
        if is_full {
            self.goal = Some(node);
        }
        true
    }

    fn run_round(&mut self, images: &[Images<'_>]) -> usize {
        self.alive.retain(|m| !m.dead);
        let mut order: Vec<usize> = (0..self.alive.len()).collect();
        order.sort_by_key(|&i| (self.alive[i].round == self.round - 1, i));
        let pool: Vec<Vec<u8>> = order.iter().map(|&i| self.nodes[self.alive[i].node].key.clone()).collect();
        let new_from = order.iter().position(|&i| self.alive[i].round == self.round - 1).unwrap_or(pool.len());
        let runs: Vec<Vec<(u8, usize)>> = pool
            .iter()
            .map(|k| {
                let mut r: Vec<(u8, usize)> = Vec::new();
                for &v in k {
                    match r.last_mut() {
                        Some((w, c)) if *w == v => *c += 1,
                        _ => r.push((v, 1)),
                    }
                }
                r
            })
            .collect();
        for (op, im) in images.iter().enumerate() {
            let ctx = OpCtx { op, images: im, pool: pool.clone(), runs: runs.clone(), new_from };
            let mut mx = Matrix { cols: Vec::new(), pre: vec![vec![0; self.m]], blocks: vec![vec![(0, self.m)]] };
            self.columns(&ctx, &mut mx, false);
            if self.stopped() {
                break;
            }
        }
        self.alive.iter().filter(|m| !m.dead && m.round == self.round).count()
    }

    fn columns(&mut self, ctx: &OpCtx<'_>, mx: &mut Matrix, any_new: bool) {
        let c = mx.cols.len();
        let k = ctx.images.arity;
        for p in 0..ctx.pool.len() {
            if self.stopped() {
                return;
            }
            let is_new = p >= ctx.new_from;
            if c + 1 == k && !any_new && !is_new {
                continue;
            }
            if self.symmetric {
                let mut counts = ctx.runs[p].clone();
                let mut col = vec![0u8; self.m];
                self.arrange(ctx, mx, &mut counts, &mut col, 0, any_new || is_new);
            } else {
                let col = ctx.pool[p].clone();
                self.place(ctx, mx, col, any_new || is_new);
            }
        }
    }

    fn arrange(
        &mut self,
        ctx: &OpCtx<'_>,
        mx: &mut Matrix,
        counts: &mut Vec<(u8, usize)>,
        col: &mut Vec<u8>,
        bi: usize,
        any_new: bool,
    ) {
        if self.stopped() {
            return;
        }
        let c = mx.cols.len();
        if bi == mx.blocks[c].len() {
            self.place(ctx, mx, col.clone(), any_new);
            return;
        }
        let (s, e) = mx.blocks[c][bi];
        self.fill(ctx, mx, counts, col, bi, 0, s, e - s, any_new);
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        &mut self,
        ctx: &OpCtx<'_>,
        mx: &mut Matrix,
        counts: &mut Vec<(u8, usize)>,
        col: &mut Vec<u8>,
        bi: usize,
        vi: usize,
        pos: usize,
        need: usize,
        any_new: bool,
    ) {
        if need == 0 {
            self.arrange(ctx, mx, counts, col, bi + 1, any_new);
            return;
        }
        if vi == counts.len() || self.stopped() {
            return;
        }
        let (v, have) = counts[vi];
        for t in (0..=have.min(need)).rev() {
            for slot in &mut col[pos..pos + t] {
                *slot = v;
            }
            counts[vi].1 -= t;
            self.fill(ctx, mx, counts, col, bi, vi + 1, pos + t, need - t, any_new);
            counts[vi].1 += t;
        }
    }

    /// Column `col` is fixed at the next position of the matrix.
    fn place(&mut self, ctx: &OpCtx<'_>, mx: &mut Matrix, col: Vec<u8>, any_new: bool) {
        let c = mx.cols.len();
        let k = ctx.images.arity;
        if !self.tick(self.m as u64) {
            return;
        }
        let base = ctx.images.base;
        let pre: Vec<usize> = mx.pre[c].iter().zip(&col).map(|(&p, &v)| p * base + v as usize).collect();
        mx.cols.push(col);
        let vals: Vec<u8> = (0..self.m)
            .map(|l| {
                let prefix: Vec<u8> = if ctx.images.table.is_some() {
                    Vec::new()
                } else {
                    mx.cols.iter().map(|cl| cl[l]).collect()
                };
                ctx.images.bound(pre[l], c + 1, &prefix)
            })
            .collect();
        if c + 1 == k {
            if any_new {
                self.emit(ctx, mx, &vals);
            }
        } else {
            let bound = self.canonical(&vals);
            let prune = !bound.iter().all(|&v| v == self.full) && {
                let sig = self.signature(&bound);
                self.dominated(&bound, &sig)
            };
            if !prune {
                let blocks = if self.symmetric {
                    let colr = &mx.cols[c];
                    let mut out = Vec::new();
                    for &(s, e) in &mx.blocks[c] {
                        let mut a = s;
                        for l in s + 1..=e {
                            if l == e || colr[l] != colr[a] {
                                out.push((a, l));
                                a = l;
                            }
                        }
                    }
                    out
                } else {
                    vec![(0, self.m)]
                };
                mx.pre.push(pre);
                mx.blocks.push(blocks);
                self.columns(ctx, mx, any_new);
                mx.pre.pop();
                mx.blocks.pop();
            }
        }
        mx.cols.pop();
    }

    fn emit(&mut self, ctx: &OpCtx<'_>, mx: &Matrix, vals: &[u8]) {
        let key = self.canonical(vals);
        if self.seen.contains(&key) {
            return;
        }
        let args: Vec<Vec<u8>> = if self.symmetric {
            let mut order: Vec<usize> = (0..self.m).collect();
            order.sort_by_key(|&l| vals[l]);
            mx.cols.iter().map(|col| order.iter().map(|&l| col[l]).collect()).collect()
        } else {
            mx.cols.clone()
        };
        self.offer(key, Origin::Apply { op: ctx.op, args });
    }

    fn derivation(&self, sources: &AdversaryFamily) -> Option<Derivation> {
        let goal = self.goal?;
        let src_index: HashMap<&Vec<u8>, usize> =
            sources.members.iter().enumerate().rev().map(|(i, a)| (&a.0, i)).collect();
        let mut steps = Vec::new();
        let mut memo: HashMap<Vec<u8>, usize> = HashMap::new();
        let target = self.nodes[goal].key.clone();
        self.derive(&target, &src_index, &mut steps, &mut memo)?;
        Some(Derivation { steps })
    }

    fn derive(
        &self,
        explicit: &[u8],
        src_index: &HashMap<&Vec<u8>, usize>,
        steps: &mut Vec<DerivationStep>,
        memo: &mut HashMap<Vec<u8>, usize>,
    ) -> Option<usize> {
        if let Some(&i) = memo.get(explicit) {
            return Some(i);
        }
        let key = self.canonical(explicit);
        let node = &self.nodes[*self.node_of.get(&key)?];
        let step = match &node.origin {
            Origin::Source(i) => {
                if self.symmetric {
                    Step::Source(*src_index.get(&explicit.to_vec())?)
                } else {
                    Step::Source(*i)
                }
            }
            Origin::Apply { op, args } => {
                // explicit[l] = key[p[l]]
                let mut order: Vec<usize> = (0..self.m).collect();
                order.sort_by_key(|&l| explicit[l]);
                let mut p = vec![0usize; self.m];
                for (j, &l) in order.iter().enumerate() {
                    p[l] = if self.symmetric { j } else { l };
                }
                let mut ids = Vec::with_capacity(args.len());
                for a in args {
                    let ex: Vec<u8> = (0..self.m).map(|l| a[p[l]]).collect();
                    ids.push(self.derive(&ex, src_index, steps, memo)?);
                }
                Step::Apply { op: *op, args: ids }
            }
        };
        steps.push(DerivationStep { adversary: Adversary(explicit.to_vec()), step });
        memo.insert(explicit.to_vec(), steps.len() - 1);
        Some(steps.len() - 1)
    }
}

/// Least dominance-reduced family containing `sources` and closed under
/// pointwise application of the basis operations.
pub fn adversary_closure(alg: &Algebra, sources: &AdversaryFamily, budget: &Budget) -> Result<AdversaryClosure> {
    let m = sources.m;
    if m == 0 || m > ADVERSARY_CAP {
        return Err(Error::Cap(format!("adversary length {m} outside 1..={ADVERSARY_CAP}")));
    }
    let full = alg.domain().full_mask();
    for a in &sources.members {
        if a.len() != m {
            return Err(Error::ArityMismatch { expected: m, got: a.len() });
        }
        if a.0.iter().any(|&c| c == 0 || c & !full != 0) {
            return Err(Error::invalid(format!("bad adversary {}", a.render(alg.domain()))));
        }
    }
    let symmetric = sources.is_symmetric();
    let mut eng = Engine {
        m,
        full,
        symmetric,
        upsets: upsets_for(alg.size()),
        nodes: Vec::new(),
        node_of: HashMap::new(),
        seen: HashSet::new(),
        alive: Vec::new(),
        meter: budget.meter(),
        budget_hit: false,
        goal: None,
        round: 0,
        ticks: 0,
    };
    for (i, a) in sources.members.iter().enumerate() {
        let key = eng.canonical(&a.0);
        eng.offer(key, Origin::Source(i));
        if eng.stopped() {
            break;
        }
    }
    let images: Vec<Images<'_>> = alg.basis().iter().map(|f| Images::new(f, full)).collect();
    let mut rounds = 0;
    let mut fixpoint = false;
    while !eng.stopped() {
        eng.round += 1;
        rounds += 1;
        if eng.run_round(&images) == 0 && !eng.stopped() {
            fixpoint = true;
            break;
        }
    }
    let derivation = eng.derivation(sources);
    let reached_full = eng.goal.is_some();
    let mut members: Vec<Adversary> =
        eng.alive.iter().filter(|mem| !mem.dead).map(|mem| Adversary(eng.nodes[mem.node].key.clone())).collect();
    members.sort();
    Ok(AdversaryClosure {
        family: AdversaryFamily { m, members },
        symmetric,
        reached_full,
        complete: reached_full || fixpoint,
        rounds,
        work: eng.meter.work,
        derivation,
    })
}

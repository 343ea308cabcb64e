//! Brute-force reference implementations. Nothing here calls into the
//! engines it is compared against except for plain table lookups.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use clonelab::adversary::{adversary_closure, AdversaryFamily, generates_power, collapsing_sources};
use clonelab::algebra::{Algebra, Domain, Elem, Operation, Relation};
use clonelab::relations::preserves;
use clonelab::{Budget, Outcome};

/// Every tuple of length `n` over `0..size`, lexicographic.
pub fn tuples(size: usize, n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size as Elem).map(move |e| {
                    let mut u = t.clone();
                    u.push(e);
                    u
                })
            })
            .collect();
    }
    out
}

/// Row-major table lookup, leftmost argument most significant.
pub fn apply(f: &Operation, x: &[Elem]) -> Elem {
    let idx = x.iter().fold(0usize, |acc, &e| acc * f.size() + e as usize);
    f.table()[idx]
}

fn choices<T: Clone>(pool: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|c| {
                pool.iter().map(move |p| {
                    let mut d = c.clone();
                    d.push(p.clone());
                    d
                })
            })
            .collect();
    }
    out
}

/// Subuniverse of `A^m` generated by `gens`, by repeated full passes.
pub fn naive_closure(alg: &Algebra, gens: &[Vec<Elem>]) -> BTreeSet<Vec<Elem>> {
    let mut set: BTreeSet<Vec<Elem>> = gens.iter().cloned().collect();
    loop {
        let pool: Vec<Vec<Elem>> = set.iter().cloned().collect();
        let mut grew = false;
        for f in alg.basis() {
            for cols in choices(&pool, f.arity()) {
                let m = cols.first().map_or(0, Vec::len);
                let y: Vec<Elem> = (0..m).map(|i| apply(f, &cols.iter().map(|c| c[i]).collect::<Vec<_>>())).collect();
                grew |= set.insert(y);
            }
        }
        if !grew {
            return set;
        }
    }
}

pub fn naive_preserves(f: &Operation, rho: &Relation) -> bool {
    let members: Vec<Vec<Elem>> = tuples(rho.size(), rho.arity()).into_iter().filter(|t| rho.contains(t)).collect();
    choices(&members, f.arity()).iter().all(|cols| {
        let y: Vec<Elem> = (0..rho.arity()).map(|i| apply(f, &cols.iter().map(|c| c[i]).collect::<Vec<_>>())).collect();
        rho.contains(&y)
    })
}

/// Image of `f` on a product of subsets, by enumerating the product.
fn set_image(f: &Operation, sets: &[u8], memo: &mut HashMap<(usize, Vec<u8>), u8>, id: usize) -> u8 {
    if let Some(&v) = memo.get(&(id, sets.to_vec())) {
        return v;
    }
    let mut img = 0u8;
    for x in tuples(f.size(), f.arity()) {
        if x.iter().zip(sets).all(|(&e, &s)| s >> e & 1 == 1) {
            img |= 1 << apply(f, &x);
        }
    }
    memo.insert((id, sets.to_vec()), img);
    img
}

fn dominated(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x & !y == 0)
}

fn antichain(mut v: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    v.sort();
    v.dedup();
    let keep: Vec<Vec<u8>> =
        v.iter().filter(|a| !v.iter().any(|b| b != *a && dominated(a, b))).cloned().collect();
    keep
}

/// Maximal reachable adversaries from `sources`: apply every basis
/// operation to every tuple of current maximal members until nothing new
/// appears. Returns the antichain and whether the full adversary is in it.
pub fn naive_adversary_closure(alg: &Algebra, sources: &[Vec<u8>]) -> (Vec<Vec<u8>>, bool) {
    let full = ((1u16 << alg.size()) - 1) as u8;
    let m = sources[0].len();
    let mut memo = HashMap::new();
    let mut set = antichain(sources.to_vec());
    loop {
        let mut next = set.clone();
        for (id, f) in alg.basis().iter().enumerate() {
            for args in choices(&set, f.arity()) {
                let img: Vec<u8> = (0..m)
                    .map(|i| set_image(f, &args.iter().map(|a| a[i]).collect::<Vec<_>>(), &mut memo, id))
                    .collect();
                next.push(img);
            }
        }
        let next = antichain(next);
        if next == set {
            let reached = set.iter().any(|a| a.iter().all(|&c| c == full));
            return (set, reached);
        }
        set = next;
    }
}

/// Compare the engine with the naive closure on one source family.
/// Returns a description of the first disagreement.
pub fn compare_adversary_closure(alg: &Algebra, sources: &AdversaryFamily) -> Result<(), String> {
    let raw: Vec<Vec<u8>> = sources.members.iter().map(|a| a.0.clone()).collect();
    let (oracle, reached) = naive_adversary_closure(alg, &raw);
    let c = adversary_closure(alg, sources, &Budget::default()).map_err(|e| e.to_string())?;
    let want = Outcome::from_bool(reached);
    if c.outcome() != want {
        return Err(format!("{}: engine {} oracle {}", alg.label(), c.outcome(), want));
    }
    if let Some(d) = &c.derivation {
        d.replay(alg, sources).map_err(|e| e.to_string())?;
    }
    if !reached {
        let got: BTreeSet<Vec<u8>> = c.family.members.iter().map(|a| a.0.clone()).collect();
        let want: BTreeSet<Vec<u8>> = if c.symmetric {
            oracle
                .iter()
                .map(|a| {
                    let mut s = a.clone();
                    s.sort();
                    s
                })
                .collect()
        } else {
            oracle.into_iter().collect()
        };
        if got != want {
            return Err(format!("{}: family {:?} vs oracle {:?}", alg.label(), got, want));
        }
    }
    Ok(())
}

/// Exhaustive Σ-source comparison for `m <= m_max`.
pub fn sigma_grid_agrees(alg: &Algebra, m_max: usize) -> Result<usize, String> {
    let d = alg.domain();
    let mut n = 0;
    for m in 1..=m_max {
        for k in 0..m {
            for src in 1..=d.full_mask() {
                let fam = collapsing_sources(d, m, k, src).map_err(|e| e.to_string())?;
                compare_adversary_closure(alg, &fam).map_err(|e| format!("m={m} k={k} src={src}: {e}"))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Every generator subset at `m = 1, 2`, and seeded subsets at `m = 3`.
pub fn power_generation_agrees(alg: &Algebra, samples_m3: usize, seed: u64) -> Result<usize, String> {
    let size = alg.size();
    let mut n = 0;
    let mut check = |m: usize, gens: Vec<Vec<Elem>>| -> Result<(), String> {
        let oracle = naive_closure(alg, &gens);
        let g = generates_power(alg, m, &gens, &Budget::default()).map_err(|e| e.to_string())?;
        let universe = size.pow(m as u32);
        let want = Outcome::from_bool(oracle.len() == universe);
        if g.outcome != want || (want == Outcome::No && g.closure_size != oracle.len()) {
            return Err(format!("m={m} gens={gens:?}: engine {} ({}) oracle {}", g.outcome, g.closure_size, oracle.len()));
        }
        n += 1;
        Ok(())
    };
    for m in 1..=2 {
        let all = tuples(size, m);
        for bits in 1u32..(1 << all.len()) {
            let gens: Vec<Vec<Elem>> = (0..all.len()).filter(|i| bits >> i & 1 == 1).map(|i| all[i].clone()).collect();
            check(m, gens)?;
        }
    }
    let all = tuples(size, 3);
    let mut state = seed;
    for _ in 0..samples_m3 {
        // xorshift, fixed seed
        let mut gens = Vec::new();
        for t in &all {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if state.is_multiple_of(6) {
                gens.push(t.clone());
            }
        }
        if gens.is_empty() {
            continue;
        }
        check(3, gens)?;
    }
    Ok(n)
}

/// Every relation of arity 1 and 2 on the domain of `f`.
pub fn preservation_agrees(f: &Operation) -> Result<usize, String> {
    let d = Domain::new((0..f.size()).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap();
    let mut n = 0;
    for arity in 1..=2 {
        let all = tuples(f.size(), arity);
        for bits in 1u32..(1 << all.len()) {
            let members: Vec<Vec<Elem>> =
                (0..all.len()).filter(|i| bits >> i & 1 == 1).map(|i| all[i].clone()).collect();
            let rho = Relation::from_tuples("rho", f.size(), arity, &members).unwrap();
            let p = preserves(f, &rho, &Budget::default()).map_err(|e| e.to_string())?;
            if p.preserved != naive_preserves(f, &rho) {
                return Err(format!("{} on {}", f.name(), rho.fmt_braces(&d)));
            }
            if let Some(cx) = &p.counterexample {
                if !cx.recheck(f, &rho) {
                    return Err(format!("bad counterexample for {}", rho.fmt_braces(&d)));
                }
            }
            n += 1;
        }
    }
    Ok(n)
}

/// `{a,b}^m` tuples are each outside the closure of all other tuples, and
/// together generate `A^m`: so the least generating set has size `2^m`.
pub fn semilattice_mingen_oracle(alg: &Algebra, m: usize) -> usize {
    let all = tuples(alg.size(), m);
    let universe = all.len();
    let mandatory: Vec<Vec<Elem>> = all
        .iter()
        .filter(|t| {
            let others: Vec<Vec<Elem>> = all.iter().filter(|u| u != t).cloned().collect();
            !naive_closure(alg, &others).contains(*t)
        })
        .cloned()
        .collect();
    assert_eq!(naive_closure(alg, &mandatory).len(), universe, "mandatory tuples do not generate");
    mandatory.len()
}

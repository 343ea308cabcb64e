//! Adversaries, Σ-families and single-step composability.

use std::fmt;

use crate::algebra::{Domain, Elem, Operation};
use crate::error::{Error, Result};

/// Largest adversary length handled by the closure engine.
pub const ADVERSARY_CAP: usize = 12;

/// An `m`-tuple of nonempty subsets of the domain, each a bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Adversary(pub Vec<u8>);

impl Adversary {
    pub fn new(coords: Vec<u8>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("an adversary needs at least one coordinate"));
        }
        if coords.contains(&0) {
            return Err(Error::invalid("adversary coordinates must be nonempty"));
        }
        Ok(Adversary(coords))
    }

    pub fn full(m: usize, d: &Domain) -> Self {
        Adversary(vec![d.full_mask(); m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[u8] {
        &self.0
    }

    pub fn is_full(&self, full: u8) -> bool {
        self.0.iter().all(|&c| c == full)
    }

    /// Coordinatewise `self ⊇ other`.
    pub fn dominates(&self, other: &Adversary) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(&a, &b)| b & !a == 0)
    }

    /// Sorted copy; the representative of the permutation orbit.
    pub fn canonical(&self) -> Adversary {
        let mut v = self.0.clone();
        v.sort_unstable();
        Adversary(v)
    }

    /// `abc,a,a` style.
    pub fn render(&self, d: &Domain) -> String {
        self.0.iter().map(|&c| d.fmt_mask(c)).collect::<Vec<_>>().join(",")
    }

    pub fn parse(d: &Domain, s: &str) -> Result<Self> {
        let coords = s.split(',').map(|p| d.parse_mask(p)).collect::<Result<Vec<_>>>()?;
        Adversary::new(coords)
    }
}

/// An explicit list of adversaries of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversaryFamily {
    pub m: usize,
    pub members: Vec<Adversary>,
}

impl AdversaryFamily {
    pub fn new(m: usize, members: Vec<Adversary>) -> Result<Self> {
        if let Some(a) = members.iter().find(|a| a.len() != m) {
            return Err(Error::ArityMismatch { expected: m, got: a.len() });
        }
        Ok(AdversaryFamily { m, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Union, keeping first occurrences in order.
    pub fn union(&self, other: &AdversaryFamily) -> Result<AdversaryFamily> {
        if self.m != other.m {
            return Err(Error::ArityMismatch { expected: self.m, got: other.m });
        }
        let mut members = self.members.clone();
        for a in &other.members {
            if !members.contains(a) {
                members.push(a.clone());
            }
        }
        Ok(AdversaryFamily { m: self.m, members })
    }

    /// Keep only members not dominated by another member (first copy of
    /// duplicates wins).
    pub fn reduced(&self) -> AdversaryFamily {
        let mut keep: Vec<Adversary> = Vec::new();
        for (i, a) in self.members.iter().enumerate() {
            let beaten = self.members.iter().enumerate().any(|(j, b)| j != i && b.dominates(a) && (b != a || j < i));
            if !beaten {
                keep.push(a.clone());
            }
        }
        AdversaryFamily { m: self.m, members: keep }
    }

    /// Closed under swapping neighbouring coordinates, hence under all
    /// coordinate permutations.
    pub fn is_symmetric(&self) -> bool {
        let set: std::collections::HashSet<&Adversary> = self.members.iter().collect();
        self.members.iter().all(|a| {
            (0..a.len().saturating_sub(1)).all(|l| {
                let mut b = a.clone();
                b.0.swap(l, l + 1);
                set.contains(&b)
            })
        })
    }

    /// Is `a` coordinatewise inside some member?
    pub fn covers(&self, a: &Adversary) -> bool {
        self.members.iter().any(|b| b.dominates(a))
    }
}

impl fmt::Display for Adversary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&Domain::default()))
    }
}

/// Every placement of `k` copies of `D` among `m - k` copies of `{x}`,
/// ordered by the positions of the `D` coordinates.
pub fn sigma_family(d: &Domain, m: usize, k: usize, x: Elem) -> Result<AdversaryFamily> {
    if k > m || m == 0 {
        return Err(Error::invalid(format!("need 0 <= k <= m and m >= 1, got m={m} k={k}")));
    }
    d.check(x as usize)?;
    let mut members = Vec::new();
    let mut pos: Vec<usize> = (0..k).collect();
    loop {
        let mut coords = vec![1u8 << x; m];
        for &p in &pos {
            coords[p] = d.full_mask();
        }
        members.push(Adversary(coords));
        // next combination
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if pos[i] < m - k + i {
                pos[i] += 1;
                for j in i + 1..k {
                    pos[j] = pos[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok(AdversaryFamily { m, members })
}

/// Union of the Σ-families over the elements of `source`.
pub fn collapsing_sources(d: &Domain, m: usize, k: usize, source: u8) -> Result<AdversaryFamily> {
    if source == 0 {
        return Err(Error::invalid("source set must be nonempty"));
    }
    let mut fam = AdversaryFamily { m, members: Vec::new() };
    for x in 0..d.size() as Elem {
        if source >> x & 1 == 1 {
            fam = fam.union(&sigma_family(d, m, k, x)?)?;
        }
    }
    Ok(fam)
}

/// Image of `f` on the product of the `i`-th coordinates of `sources`.
pub fn image(f: &Operation, sources: &[&Adversary], i: usize) -> u8 {
    let sets: Vec<u8> = sources.iter().map(|a| a.0[i]).collect();
    f.image_of_masks(&sets)
}

/// Is `target` coordinatewise inside `f(sources)`?
pub fn f_composable(f: &Operation, target: &Adversary, sources: &[Adversary]) -> Result<bool> {
    if sources.len() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: sources.len() });
    }
    if let Some(a) = sources.iter().find(|a| a.len() != target.len()) {
        return Err(Error::ArityMismatch { expected: target.len(), got: a.len() });
    }
    let refs: Vec<&Adversary> = sources.iter().collect();
    Ok((0..target.len()).all(|i| target.0[i] & !image(f, &refs, i) == 0))
}

/// Tuples over `size` elements with at most `k` switch positions, in
/// lexicographic order.
pub fn switch_tuples(size: usize, m: usize, k: usize) -> Vec<Vec<Elem>> {
    crate::algebra::all_tuples(size, m).filter(|t| switches(t) <= k).collect()
}

pub fn switches(t: &[Elem]) -> usize {
    t.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{A, B};
    use crate::gallery::{named, NamedOp};

    #[test]
    fn sigma_examples() {
        let d = Domain::default();
        let f = sigma_family(&d, 3, 1, A).unwrap();
        let got: Vec<String> = f.members.iter().map(|a| a.render(&d)).collect();
        assert_eq!(got, vec!["abc,a,a", "a,abc,a", "a,a,abc"]);
        assert_eq!(sigma_family(&d, 2, 0, B).unwrap().members, vec![Adversary(vec![2, 2])]);
        assert_eq!(sigma_family(&d, 4, 2, A).unwrap().len(), 6);
        assert!(f.is_symmetric());
    }

    #[test]
    fn composability_examples() {
        let d = Domain::default();
        let s = named(NamedOp::S).unwrap();
        let adv = |t: &str| Adversary::parse(&d, t).unwrap();
        assert!(f_composable(&s, &adv("c,c"), &[adv("a,b"), adv("b,a")]).unwrap());
        assert!(!f_composable(&s, &adv("abc,abc"), &[adv("abc,a"), adv("abc,b")]).unwrap());
        let p = Operation::projection(3, 1, 0).unwrap();
        assert!(f_composable(&p, &adv("ab,c"), &[adv("ab,c")]).unwrap());
    }

    #[test]
    fn switch_counts() {
        assert_eq!(switch_tuples(3, 2, 1).len(), 9);
        assert_eq!(switch_tuples(3, 3, 1).len(), 15);
        assert_eq!(switch_tuples(3, 3, 0).len(), 3);
    }

    #[test]
    fn parse_render() {
        let d = Domain::default();
        let a = Adversary::parse(&d, "abc,a,D").unwrap();
        assert_eq!(a.render(&d), "abc,a,abc");
        assert!(Adversary::parse(&d, "").is_err());
    }
}

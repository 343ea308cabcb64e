use super::domain::{capped_pow, decode, encode, Domain, Elem, TABLE_CAP};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite relation stored as a membership mask over `size^arity` slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    name: String,
    size: usize,
    arity: usize,
    mask: BitSet,
}

impl Relation {
    pub fn empty(name: impl Into<String>, size: usize, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::invalid("relation arity must be at least 1"));
        }
        let len = capped_pow(size, arity).ok_or(Error::TableCap { size, arity, cap: TABLE_CAP })?;
        Ok(Relation { name: name.into(), size, arity, mask: BitSet::new(len) })
    }

    pub fn full(name: impl Into<String>, size: usize, arity: usize) -> Result<Self> {
        let mut r = Self::empty(name, size, arity)?;
        r.mask = BitSet::full(r.mask.capacity());
        Ok(r)
    }

    pub fn from_tuples<T: AsRef<[Elem]>>(
        name: impl Into<String>,
        size: usize,
        arity: usize,
        tuples: impl IntoIterator<Item = T>,
    ) -> Result<Self> {
        let mut r = Self::empty(name, size, arity)?;
        for t in tuples {
            r.insert(t.as_ref())?;
        }
        Ok(r)
    }

    pub fn from_mask(name: impl Into<String>, size: usize, arity: usize, mask: BitSet) -> Result<Self> {
        let r = Self::empty(name, size, arity)?;
        if mask.capacity() != r.mask.capacity() {
            return Err(Error::invalid("mask length does not match size^arity"));
        }
        Ok(Relation { mask, ..r })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Relation { name: name.into(), ..self.clone() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mask(&self) -> &BitSet {
        &self.mask
    }

    pub fn slots(&self) -> usize {
        self.mask.capacity()
    }

    pub fn len(&self) -> usize {
        self.mask.count()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.mask.is_full()
    }

    pub fn insert(&mut self, t: &[Elem]) -> Result<()> {
        self.check(t)?;
        self.mask.insert(encode(t, self.size));
        Ok(())
    }

    pub fn contains(&self, t: &[Elem]) -> bool {
        t.len() == self.arity
            && t.iter().all(|&e| (e as usize) < self.size)
            && self.mask.contains(encode(t, self.size))
    }

    #[inline]
    pub fn contains_index(&self, i: usize) -> bool {
        self.mask.contains(i)
    }

    /// Member tuples in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.mask.iter().map(|i| decode(i, self.size, self.arity))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.mask.is_subset(&other.mask)
    }

    /// Same tuple set, ignoring the name.
    pub fn same_tuples(&self, other: &Relation) -> bool {
        self.size == other.size && self.arity == other.arity && self.mask == other.mask
    }

    fn check(&self, t: &[Elem]) -> Result<()> {
        if t.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: t.len() });
        }
        if let Some(&bad) = t.iter().find(|&&e| e as usize >= self.size) {
            return Err(Error::ElementOutOfRange { element: bad as usize, size: self.size });
        }
        Ok(())
    }

    /// `{(a,b),(b,a)}` style literal.
    pub fn fmt_braces(&self, d: &Domain) -> String {
        let body: Vec<String> = self
            .tuples()
            .map(|t| format!("({})", t.iter().map(|&e| d.name(e)).collect::<Vec<_>>().join(",")))
            .collect();
        format!("{{{}}}", body.join(","))
    }

    /// Parse a brace literal; arity comes from the first tuple, or `arity`
    /// when the literal is empty.
    pub fn parse_braces(s: &str, d: &Domain, arity: Option<usize>) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(|| Error::invalid(format!("relation literal must be in braces: `{s}`")))?
            .trim();
        let mut tuples = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| Error::invalid(format!("expected `(` in `{rest}`")))?;
            if !rest[..open].trim().trim_matches(',').trim().is_empty() {
                return Err(Error::invalid(format!("unexpected `{}`", &rest[..open])));
            }
            let close = rest.find(')').ok_or_else(|| Error::invalid("unbalanced `(`"))?;
            tuples.push(d.parse_tuple(&rest[open..=close])?);
            rest = rest[close + 1..].trim_start_matches([',', ' ']);
        }
        let n = match (tuples.first(), arity) {
            (Some(t), _) => t.len(),
            (None, Some(n)) => n,
            (None, None) => return Err(Error::invalid("empty relation literal needs an arity")),
        };
        Relation::from_tuples("rel", d.size(), n, tuples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brace_roundtrip() {
        let d = Domain::default();
        let r = Relation::parse_braces("{(a,b),(b,a)}", &d, None).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&[1, 0]));
        assert_eq!(r.fmt_braces(&d), "{(a,b),(b,a)}");
        let e = Relation::parse_braces("{}", &d, Some(2)).unwrap();
        assert!(e.is_empty());
        assert!(Relation::parse_braces("(a,b)", &d, None).is_err());
    }

    #[test]
    fn tuple_checks() {
        let mut r = Relation::empty("r", 3, 2).unwrap();
        assert!(r.insert(&[0]).is_err());
        assert!(r.insert(&[0, 3]).is_err());
        assert!(!r.contains(&[0, 3]));
    }
}

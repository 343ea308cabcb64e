use crate::error::{Error, Result};

/// A domain element, addressed by index.
pub type Elem = u8;

/// Largest supported domain. Subsets of the domain are stored as `u8` masks.
pub const MAX_DOMAIN: usize = 8;

/// Explicit-table cap: `size^arity` may not exceed this.
pub const TABLE_CAP: usize = 177_147;

pub const A: Elem = 0;
pub const B: Elem = 1;
pub const C: Elem = 2;

/// Finite domain with named elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    names: Vec<String>,
}

impl Default for Domain {
    fn default() -> Self {
        Domain { names: vec!["a".into(), "b".into(), "c".into()] }
    }
}

impl Domain {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() < 2 || names.len() > MAX_DOMAIN {
            return Err(Error::invalid(format!(
                "domain size must be between 2 and {MAX_DOMAIN}, got {}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(|c: char| c.is_whitespace() || ",;(){}#".contains(c)) {
                return Err(Error::invalid(format!("bad element name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::invalid(format!("duplicate element name `{n}`")));
            }
        }
        Ok(Domain { names })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Result<Elem> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Elem)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// All element names are one character, so tuples can be written `abc`.
    pub fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn full_mask(&self) -> u8 {
        ((1u16 << self.size()) - 1) as u8
    }

    pub fn fmt_tuple(&self, t: &[Elem]) -> String {
        let sep = if self.single_char() { "" } else { "," };
        t.iter().map(|&e| self.name(e)).collect::<Vec<_>>().join(sep)
    }

    /// Parse `abc`, `a,b,c` or `(a,b,c)`.
    pub fn parse_tuple(&self, s: &str) -> Result<Vec<Elem>> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        if s.contains(',') {
            return s.split(',').map(|p| self.index(p.trim())).collect();
        }
        if let Ok(e) = self.index(s) {
            return Ok(vec![e]);
        }
        if self.single_char() {
            return s.chars().map(|c| self.index(&c.to_string())).collect();
        }
        Err(Error::UnknownName(s.to_string()))
    }

    /// Subset mask written as concatenated names (`ac`) or comma-free list.
    pub fn fmt_mask(&self, mask: u8) -> String {
        let sep = if self.single_char() { "" } else { "|" };
        (0..self.size())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.name(i as Elem))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn parse_mask(&self, s: &str) -> Result<u8> {
        let s = s.trim();
        if s == "D" && self.index("D").is_err() {
            return Ok(self.full_mask());
        }
        let parts: Vec<String> = if s.contains('|') {
            s.split('|').map(|p| p.trim().to_string()).collect()
        } else if self.single_char() {
            s.chars().map(|c| c.to_string()).collect()
        } else {
            vec![s.to_string()]
        };
        let mut m = 0u8;
        for p in parts {
            m |= 1 << self.index(&p)?;
        }
        if m == 0 {
            return Err(Error::invalid("empty subset"));
        }
        Ok(m)
    }

    pub fn check(&self, e: usize) -> Result<Elem> {
        if e < self.size() {
            Ok(e as Elem)
        } else {
            Err(Error::ElementOutOfRange { element: e, size: self.size() })
        }
    }
}

/// `size^n`, or `None` past the table cap.
pub fn capped_pow(size: usize, n: usize) -> Option<usize> {
    let mut v: usize = 1;
    for _ in 0..n {
        v = v.checked_mul(size)?;
        if v > TABLE_CAP {
            return None;
        }
    }
    Some(v)
}

/// Row-major index, leftmost coordinate most significant.
#[inline]
pub fn encode(t: &[Elem], size: usize) -> usize {
    t.iter().fold(0, |acc, &e| acc * size + e as usize)
}

pub fn decode_into(mut idx: usize, size: usize, out: &mut [Elem]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % size) as Elem;
        idx /= size;
    }
}

pub fn decode(idx: usize, size: usize, n: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    decode_into(idx, size, &mut v);
    v
}

/// Advance `t` to the next tuple in lexicographic order; false on wraparound.
pub fn next_tuple(t: &mut [Elem], size: usize) -> bool {
    for slot in t.iter_mut().rev() {
        if (*slot as usize) + 1 < size {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

/// All `n`-tuples over `size` elements in lexicographic order.
pub fn all_tuples(size: usize, n: usize) -> impl Iterator<Item = Vec<Elem>> {
    let mut cur: Option<Vec<Elem>> = Some(vec![0; n]);
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut nxt = out.clone();
        if next_tuple(&mut nxt, size) {
            cur = Some(nxt);
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_roundtrip() {
        for i in 0..81 {
            assert_eq!(encode(&decode(i, 3, 4), 3), i);
        }
        assert_eq!(encode(&[1, 0], 3), 3);
    }

    #[test]
    fn tuples_are_lexicographic() {
        let ts: Vec<_> = all_tuples(3, 2).collect();
        assert_eq!(ts.len(), 9);
        assert_eq!(ts[1], vec![0, 1]);
        assert_eq!(all_tuples(2, 0).count(), 1);
    }

    #[test]
    fn names_and_masks() {
        let d = Domain::default();
        assert_eq!(d.parse_tuple("abc").unwrap(), vec![0, 1, 2]);
        assert_eq!(d.parse_tuple("(a,b)").unwrap(), vec![0, 1]);
        assert_eq!(d.parse_mask("ac").unwrap(), 0b101);
        assert_eq!(d.fmt_mask(0b111), "abc");
        assert!(Domain::new(["x", "x"]).is_err());
        assert!(Domain::new(["x"]).is_err());
    }
}

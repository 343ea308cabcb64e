use std::sync::Arc;

use super::domain::{capped_pow, decode, encode, Elem, TABLE_CAP};
use crate::error::{Error, Result};

/// A total operation on a finite domain, stored as an explicit table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operation {
    name: String,
    size: usize,
    arity: usize,
    table: Arc<[Elem]>,
}

impl Operation {
    pub fn from_table(name: impl Into<String>, size: usize, arity: usize, table: Vec<Elem>) -> Result<Self> {
        let len = capped_pow(size, arity).ok_or(Error::TableCap { size, arity, cap: TABLE_CAP })?;
        if table.len() != len {
            return Err(Error::invalid(format!(
                "table for arity {arity} needs {len} entries, got {}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| e as usize >= size) {
            return Err(Error::ElementOutOfRange { element: bad as usize, size });
        }
        Ok(Operation { name: name.into(), size, arity, table: table.into() })
    }

    /// Build by evaluating `f` on every argument tuple.
    pub fn from_fn(
        name: impl Into<String>,
        size: usize,
        arity: usize,
        mut f: impl FnMut(&[Elem]) -> Elem,
    ) -> Result<Self> {
        let len = capped_pow(size, arity).ok_or(Error::TableCap { size, arity, cap: TABLE_CAP })?;
        let mut args = vec![0; arity];
        let mut table = Vec::with_capacity(len);
        for i in 0..len {
            super::domain::decode_into(i, size, &mut args);
            table.push(f(&args));
        }
        Self::from_table(name, size, arity, table)
    }

    /// The `i`-th of `arity` projections.
    pub fn projection(size: usize, arity: usize, i: usize) -> Result<Self> {
        if i >= arity {
            return Err(Error::invalid(format!("projection {i} of arity {arity}")));
        }
        Self::from_fn(format!("pi{i}"), size, arity, |a| a[i])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Operation { name: name.into(), ..self.clone() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn shares_table(&self, other: &Operation) -> bool {
        self.size == other.size && self.arity == other.arity && self.table == other.table
    }

    #[inline]
    pub fn at(&self, idx: usize) -> Elem {
        self.table[idx]
    }

    pub fn eval(&self, args: &[Elem]) -> Result<Elem> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        if let Some(&bad) = args.iter().find(|&&e| e as usize >= self.size) {
            return Err(Error::ElementOutOfRange { element: bad as usize, size: self.size });
        }
        Ok(self.table[encode(args, self.size)])
    }

    /// Unchecked evaluation for hot loops.
    #[inline]
    pub fn apply(&self, args: &[Elem]) -> Elem {
        self.table[encode(args, self.size)]
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|x| self.apply(&vec![x as Elem; self.arity]) == x as Elem)
    }

    /// Image of the product `sets[0] × … × sets[k-1]` as a mask.
    pub fn image_of_masks(&self, sets: &[u8]) -> u8 {
        let choices: Vec<Vec<Elem>> = sets
            .iter()
            .map(|&m| (0..self.size as Elem).filter(|&e| m >> e & 1 == 1).collect())
            .collect();
        if choices.iter().any(Vec::is_empty) {
            return 0;
        }
        let mut pos = vec![0usize; self.arity];
        let mut args: Vec<Elem> = choices.iter().map(|c| c[0]).collect();
        let mut out = 0u8;
        loop {
            out |= 1 << self.apply(&args);
            let mut j = self.arity;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                pos[j] += 1;
                if pos[j] < choices[j].len() {
                    args[j] = choices[j][pos[j]];
                    break;
                }
                pos[j] = 0;
                args[j] = choices[j][0];
            }
        }
    }

    /// Every argument tuple paired with its value, lexicographic order.
    pub fn rows(&self) -> impl Iterator<Item = (Vec<Elem>, Elem)> + '_ {
        (0..self.table.len()).map(|i| (decode(i, self.size, self.arity), self.table[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Operation {
        Operation::from_fn("s", 3, 2, |a| if a[0] == a[1] { a[0] } else { 2 }).unwrap()
    }

    #[test]
    fn evaluates_semilattice() {
        let s = s();
        assert_eq!(s.eval(&[0, 1]).unwrap(), 2);
        assert_eq!(s.eval(&[0, 0]).unwrap(), 0);
        assert!(s.is_idempotent());
        assert_eq!(s.eval(&[0]), Err(Error::ArityMismatch { expected: 2, got: 1 }));
        assert!(matches!(s.eval(&[0, 5]), Err(Error::ElementOutOfRange { .. })));
    }

    #[test]
    fn rejects_oversized_tables() {
        assert!(matches!(Operation::from_fn("big", 3, 12, |_| 0), Err(Error::TableCap { .. })));
        assert!(Operation::from_fn("ok", 3, 11, |_| 0).is_ok());
    }

    #[test]
    fn image_of_product() {
        let s = s();
        assert_eq!(s.image_of_masks(&[0b001, 0b010]), 0b100);
        assert_eq!(s.image_of_masks(&[0b111, 0b001]), 0b101);
    }
}

//! Resource limits shared by every search engine.

use std::time::{Duration, Instant};

pub const DEFAULT_MAX_TABLES: usize = 2_000_000;
pub const DEFAULT_MAX_WORK: u64 = 1_000_000_000_000;
pub const DEFAULT_MAX_SECONDS: u64 = 600;

/// Limits for one engine call. `max_tables` bounds distinct objects kept
/// (tables, family members, relations), `max_work` bounds elementary steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_tables: usize,
    pub max_work: u64,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_tables: DEFAULT_MAX_TABLES,
            max_work: DEFAULT_MAX_WORK,
            max_time: Some(Duration::from_secs(DEFAULT_MAX_SECONDS)),
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_tables: usize::MAX, max_work: u64::MAX, max_time: None }
    }

    pub fn with_tables(mut self, n: usize) -> Self {
        self.max_tables = n;
        self
    }

    pub fn with_work(mut self, n: u64) -> Self {
        self.max_work = n;
        self
    }

    /// Defaults, overridden by `CLONELAB_BUDGET` when set.
    ///
    /// Accepted forms: a bare integer (table count) or a comma list of
    /// `tables=N`, `work=N`, `seconds=N`.
    pub fn from_env() -> Self {
        match std::env::var("CLONELAB_BUDGET") {
            Ok(v) => Self::parse(&v).unwrap_or_default(),
            Err(_) => Self::default(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let mut b = Budget::default();
        let s = s.trim();
        if let Ok(n) = s.parse::<usize>() {
            b.max_tables = n;
            return Some(b);
        }
        for part in s.split(',') {
            let (k, v) = part.split_once('=')?;
            let v = v.trim();
            match k.trim() {
                "tables" => b.max_tables = v.parse().ok()?,
                "work" => b.max_work = v.parse().ok()?,
                "seconds" => b.max_time = Some(Duration::from_secs(v.parse().ok()?)),
                _ => return None,
            }
        }
        Some(b)
    }

    pub fn meter(&self) -> Meter {
        Meter { budget: self.clone(), work: 0, start: Instant::now() }
    }
}

/// Running consumption against a [`Budget`].
#[derive(Clone, Debug)]
pub struct Meter {
    budget: Budget,
    pub work: u64,
    start: Instant,
}

impl Meter {
    #[inline]
    pub fn charge(&mut self, n: u64) -> bool {
        self.work = self.work.saturating_add(n);
        self.work <= self.budget.max_work
    }

    /// Would charging `n` more stay within the work limit?
    pub fn fits(&self, n: u64) -> bool {
        self.work.saturating_add(n) <= self.budget.max_work
    }

    pub fn tables_ok(&self, n: usize) -> bool {
        n <= self.budget.max_tables
    }

    pub fn out_of_time(&self) -> bool {
        self.budget.max_time.is_some_and(|t| self.start.elapsed() > t)
    }

    pub fn exhausted(&self) -> bool {
        self.work > self.budget.max_work || self.out_of_time()
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_env_forms() {
        assert_eq!(Budget::parse("17").unwrap().max_tables, 17);
        let b = Budget::parse("tables=5,work=9,seconds=3").unwrap();
        assert_eq!((b.max_tables, b.max_work), (5, 9));
        assert_eq!(b.max_time, Some(Duration::from_secs(3)));
        assert!(Budget::parse("bogus=1").is_none());
    }
}

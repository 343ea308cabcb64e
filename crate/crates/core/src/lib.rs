//! Computational universal algebra on small finite domains.
//!
//! Operation tables and relations over a named domain, term operations and
//! term search, invariant relations and essential tuples, and the
//! adversary calculus behind collapsibility and switchability of
//! quantified constraint problems.
//!
//! ```
//! use clonelab::gallery::algebra_rs;
//! use clonelab::clone::find_term_matching;
//! use clonelab::Budget;
//!
//! let rs = algebra_rs();
//! let spec = clonelab::clone::PartialSpec::parse(rs.domain(), "ab=a,ac=c").unwrap();
//! let v = find_term_matching(&rs, 2, &spec, &Budget::default()).unwrap();
//! assert_eq!(v.witness.unwrap().render(&rs), "r(x0,x0,x0,x1)");
//! ```

pub mod adversary;
pub mod algebra;
pub mod bitset;
mod budget;
pub mod cli;
pub mod clone;
mod error;
pub mod gallery;
pub mod relations;
pub mod subpower;
mod verdict;

pub use budget::{Budget, Meter};
pub use error::{Error, Result};
pub use verdict::Outcome;

/// Run `f` on a pool of `workers` threads. Results never depend on the
/// worker count.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

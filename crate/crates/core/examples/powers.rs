//! Switchability and minimal generating sets of direct powers.

use clonelab::adversary::{is_k_switchable_at, min_generating_size};
use clonelab::gallery::{algebra_rs, algebra_s};
use clonelab::Budget;

fn main() -> clonelab::Result<()> {
    let rs = algebra_rs();
    for m in 4..=7 {
        let g = is_k_switchable_at(&rs, m, 2, &Budget::default())?;
        println!("(D;r,s) 2-switchable at m={m}: {} ({}/{})", g.outcome, g.closure_size, g.universe);
    }
    let s = algebra_s();
    for m in 1..=3 {
        let g = min_generating_size(&s, m, &Budget::default())?;
        println!("(D;s) m={m}: generating set size {:?} (bounds {}..{})", g.value(), g.lower, g.upper);
    }
    Ok(())
}

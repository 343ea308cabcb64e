//! Preservation, invariant enumeration and essential tuples.

use clonelab::algebra::{Domain, Relation};
use clonelab::gallery::{algebra_s, named, NamedOp};
use clonelab::relations::{enumerate_invariants, essential_tuples, preserves, rho_tilde};
use clonelab::Budget;

fn main() -> clonelab::Result<()> {
    let d = Domain::default();
    let swap = Relation::parse_braces("{(a,b),(b,a)}", &d, None)?;
    let s = named(NamedOp::S)?;
    let p = preserves(&s, &swap, &Budget::default())?;
    println!("s preserves {}: {}", swap.fmt_braces(&d), p.preserved);
    if let Some(cx) = &p.counterexample {
        println!("  {}", cx.render(&d));
    }
    for e in essential_tuples(&swap)? {
        println!("essential tuple {} repairs {}", d.fmt_tuple(&e.tuple), d.fmt_tuple(&e.repairs));
    }
    println!("rho~ = {}", rho_tilde(&swap)?.fmt_braces(&d));
    let inv = enumerate_invariants(&algebra_s(), 2, &Budget::default())?;
    println!("binary invariants of (D;s): {} (complete={})", inv.relations.len(), inv.complete);
    Ok(())
}

//! Print the named operations on {a,b,c} in the text format and evaluate a few rows.

use clonelab::algebra::format::render_op;
use clonelab::algebra::Domain;
use clonelab::gallery::{named, NamedOp};

fn main() -> clonelab::Result<()> {
    let d = Domain::default();
    for spec in [NamedOp::S, NamedOp::R, NamedOp::T, NamedOp::FA(3), NamedOp::HFA(2)] {
        let f = named(spec)?;
        println!("{}", render_op(&d, &f));
    }
    let s = named(NamedOp::S)?;
    let r = named(NamedOp::R)?;
    println!("s(a,b) = {}", d.name(s.eval(&d.parse_tuple("ab")?)?));
    println!("r(a,b,b,b) = {}", d.name(r.eval(&d.parse_tuple("abbb")?)?));
    Ok(())
}

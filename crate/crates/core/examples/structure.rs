//! Projectivity, coordinate classes, Hubie-pol certificates and the Gap
//! Algebra check.

use clonelab::algebra::Domain;
use clonelab::clone::{classify_coordinates, is_alpha_beta_projective, is_generalized_hubie_pol, render_report};
use clonelab::gallery::{algebra_st, gap_algebra_check, named, NamedOp};

fn main() -> clonelab::Result<()> {
    let d = Domain::default();
    let st = algebra_st();
    let rep = is_alpha_beta_projective(&st, d.parse_mask("ac")?, d.parse_mask("bc")?)?;
    println!("(D;s,t) projective: {}", rep.projective);
    for line in render_report(&d, &rep) {
        println!("  {line}");
    }
    let gap = gap_algebra_check(&st)?;
    println!("gap algebra: {} {:?}", gap.is_gap, gap.reasons);
    let r = named(NamedOp::R)?;
    for (i, c) in classify_coordinates(&r)?.iter().enumerate() {
        println!("r coordinate {i}: {}", c.class);
    }
    for n in 3..=5 {
        let fa = named(NamedOp::FA(n))?;
        let word = vec![1; fa.arity()];
        println!("fa{n} Hubie-pol in b: {}", is_generalized_hubie_pol(&fa, &word)?);
    }
    Ok(())
}

//! Σ families, f-composability and a replayed collapsibility derivation.

use clonelab::adversary::{f_composable, is_k_collapsible_at, sigma_family, Adversary};
use clonelab::algebra::Domain;
use clonelab::gallery::{algebra_st, named, NamedOp};
use clonelab::Budget;

fn main() -> clonelab::Result<()> {
    let d = Domain::default();
    let sigma = sigma_family(&d, 4, 2, 0)?;
    let shown: Vec<String> = sigma.members.iter().map(|a| a.render(&d)).collect();
    println!("Σ(4,2,a) = {}", shown.join(" "));

    let s = named(NamedOp::S)?;
    let target = Adversary::parse(&d, "c,c")?;
    let sources = [Adversary::parse(&d, "a,b")?, Adversary::parse(&d, "b,a")?];
    println!("s composes c,c from a,b and b,a: {}", f_composable(&s, &target, &sources)?);

    let st = algebra_st();
    let v = is_k_collapsible_at(&st, 8, 7, d.parse_mask("ab")?, &Budget::default())?;
    println!("(D;s,t) 7-collapsible from ab at m=8: {}", v.outcome);
    if let Some(der) = &v.closure.derivation {
        for st_ in &der.steps {
            println!("  {}", st_.adversary.render(&d));
        }
    }
    Ok(())
}

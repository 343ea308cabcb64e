//! Check which of the a- and b-variants preserves all invariants of (D;r,s)
//! up to arity 2 (arity 3 takes a couple of minutes).

use clonelab::gallery::algebra_rs;
use clonelab::relations::verify_fn_lemma;
use clonelab::Budget;

fn main() -> clonelab::Result<()> {
    let rs = algebra_rs();
    for hatted in [false, true] {
        let n = if hatted { 2 } else { 3 };
        let rep = verify_fn_lemma(&rs, n, hatted, 2, &Budget::default())?;
        for l in &rep.levels {
            println!("hatted={hatted} h={} invariants={} a={} b={}", l.h, l.invariants, l.a_holds, l.b_holds);
        }
        println!("holds={} uniform={:?}", rep.holds(), rep.uniform());
    }
    Ok(())
}

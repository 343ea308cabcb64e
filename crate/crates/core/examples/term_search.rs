//! Search for term operations with prescribed partial tables, including the
//! two-term condition for (D;r,s).

use clonelab::clone::{check_zhuk_condition, find_term_matching, PartialSpec};
use clonelab::gallery::algebra_rs;
use clonelab::Budget;

fn main() -> clonelab::Result<()> {
    let rs = algebra_rs();
    let spec = PartialSpec::parse(rs.domain(), "ab=a,ac=c")?;
    let v = find_term_matching(&rs, 2, &spec, &Budget::default())?;
    println!("p: {} {:?}", v.outcome, v.witness.map(|t| t.render(&rs)));
    let z = check_zhuk_condition(&rs, &Budget::default())?;
    for (name, reg) in [("first", &z.first), ("second", &z.second)] {
        let show = |w: &Option<clonelab::algebra::Term>| w.as_ref().map(|t| t.render(&rs)).unwrap_or_default();
        println!("{name}: {} r3={} p={}", reg.outcome(), show(&reg.r3.witness), show(&reg.p.witness));
    }
    Ok(())
}

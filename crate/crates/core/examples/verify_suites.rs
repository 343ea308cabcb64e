//! Run the quick verification suites and print their records.

use clonelab::algebra::Domain;
use clonelab::gallery::{verify_lemma, LemmaId, VerifyParams};

fn main() -> clonelab::Result<()> {
    let p = VerifyParams::default();
    let d = Domain::default();
    for id in [LemmaId::StCollapse, LemmaId::FnHubie, LemmaId::Sushnabor, LemmaId::Micro, LemmaId::ZhukChen] {
        let r = verify_lemma(id, &p)?;
        for line in r.records(&d) {
            println!("{line}");
        }
    }
    Ok(())
}

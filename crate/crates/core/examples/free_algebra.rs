//! Enumerate the binary term operations of (D;s,t) with smallest witnesses.

use clonelab::clone::free_algebra;
use clonelab::gallery::algebra_st;
use clonelab::Budget;

fn main() -> clonelab::Result<()> {
    let st = algebra_st();
    let free = free_algebra(&st, 2, &Budget::default())?;
    println!("{} binary term operations, complete={}", free.len(), free.complete);
    for e in free.elements().take(10) {
        let table = st.domain().fmt_tuple(&e.table);
        println!("{table}  {}", e.witness.render(&st));
    }
    Ok(())
}

//! Round-trip an algebra through the line-oriented text format.

use clonelab::algebra::format::Document;
use clonelab::gallery::algebra_rs;

fn main() -> clonelab::Result<()> {
    let mut doc = Document::default();
    doc.add_algebra(&algebra_rs());
    let text = doc.render();
    print!("{text}");
    let back = Document::parse(&text)?;
    println!("round trip equal: {}", back == doc);
    Ok(())
}

//! Computes the character table of S4 and prints it in the text
//! interchange format, then re-checks every table invariant.
//!
//! ```bash
//! cargo run --release --example character_table
//! ```

use charpos::{corpus, verify_table_invariants, CharacterTable};

fn main() -> charpos::Result<()> {
    let group = corpus::symmetric(4)?;
    let table = CharacterTable::compute(&group)?;

    println!("# character table of S4");
    print!("{}", table.to_text());

    println!("\ndegrees: {:?}", table.degrees());
    println!("cd(G):   {:?}", table.cd());

    let report = verify_table_invariants(&table);
    for check in &report.checks {
        println!("{}: {}", check.id, if check.passed { "ok" } else { "FAILED" });
    }
    assert!(report.all_passed());

    // round-trip through the text format is bit-exact
    let text = table.to_text();
    let parsed = charpos::TableText::parse(&text)?;
    assert_eq!(parsed.to_text(), text);
    println!("text round-trip: ok");
    Ok(())
}

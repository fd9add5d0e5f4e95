//! The group-file format: parse a group from text, compute with it, write
//! it back, and confirm the round trip preserves the generators.
//!
//! ```bash
//! cargo run --release --example group_files
//! ```

use charpos::{parse_group_text, write_group_text, CharacterTable};

fn main() -> charpos::Result<()> {
    let text = "\
# the dihedral group of order 8 on the square
degree 4
name D8
(1 2 3 4)
(1 3)
";
    let group = parse_group_text(text)?;
    println!(
        "parsed {} of order {} and degree {}",
        group.name().unwrap_or("?"),
        group.order(),
        group.degree()
    );

    let table = CharacterTable::compute(&group)?;
    println!("degrees: {:?}", table.degrees());

    let written = write_group_text(&group);
    print!("written back:\n{written}");
    let reparsed = parse_group_text(&written)?;
    assert_eq!(reparsed.generators(), group.generators());
    assert!(reparsed.same_elements(&group));
    println!("round trip: generators preserved");
    Ok(())
}

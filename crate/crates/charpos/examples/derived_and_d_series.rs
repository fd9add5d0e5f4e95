//! The derived series next to the series D_i(G) of kernel intersections,
//! and the Taketa test for individual characters.
//!
//! ```bash
//! cargo run --release --example derived_and_d_series
//! ```

use charpos::{corpus, PositionContext};

fn main() -> charpos::Result<()> {
    for (name, group) in [
        ("S4", corpus::symmetric(4)?),
        ("SL(2,3)", corpus::sl23()?),
        ("Q8", corpus::generalized_quaternion(8)?),
    ] {
        let derived: Vec<usize> = group.derived_series().iter().map(|t| t.order()).collect();
        println!("{name}: derived series orders {derived:?}, dl = {:?}", group.derived_length());

        let ctx = PositionContext::new(&group)?;
        let d_series: Vec<usize> = ctx.d_series()?.iter().map(|t| t.order()).collect();
        println!("  D_i(G) orders {d_series:?} (D_1 = G' always)");

        for row in 0..ctx.table().len() {
            let taketa = ctx.is_taketa_character(row)?;
            if !taketa {
                println!(
                    "  row {row} (degree {}, position {}): not a Taketa-character",
                    ctx.table().degree(row),
                    ctx.pos(row)
                );
            }
        }
    }
    Ok(())
}

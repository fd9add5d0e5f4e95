//! In G = SL(2,3) × C2 there is an order-8 subgroup H of quaternion shape
//! whose positional index is attained only by a character of position 2:
//! every linear character of H induces with a strictly larger maximal
//! position. This example finds every such subgroup by exhaustive search.
//!
//! ```bash
//! cargo run --release --example sl23_times_c2
//! ```

use std::sync::Arc;

use charpos::{corpus, subgroups, PositionContext};

fn main() -> charpos::Result<()> {
    let group = corpus::construct("direct_product(sl23(),cyclic(2))")?;
    println!("G = SL(2,3) x C2, order {}", group.order());
    let ctx = PositionContext::new(&group)?;
    println!("cd(G) = {:?}", ctx.cd());

    for record in subgroups::all_subgroups(&group)? {
        if record.order() != 8 {
            continue;
        }
        let sub = &record.subgroup;
        let involutions = sub.elements().iter().filter(|p| p.order() == 2).count();
        let q8_shape = sub.exponent() == 4 && involutions == 1;
        if !q8_shape {
            continue;
        }
        let record = Arc::new(record);
        let posind = ctx.posind(&record)?;
        let ht = ctx.subgroup_table(&record)?;
        print!(
            "Q8-shaped H = <{}>: posind = {}, minimizers at degrees {:?}",
            record
                .subgroup
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            posind.value,
            posind
                .minimizers
                .iter()
                .map(|&r| ht.degree(r))
                .collect::<Vec<_>>()
        );
        let linear_max: Vec<u32> = ht
            .linear_indices()
            .into_iter()
            .map(|row| {
                let induced = ht.irreducible(row).induce(&record).unwrap();
                ctx.pos_extrema(&induced).unwrap().1
            })
            .collect();
        println!("; pos_max over linear inductions: {linear_max:?}");
    }
    Ok(())
}

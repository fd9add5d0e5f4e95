//! Positions of irreducible characters, positional indices of subgroups,
//! and a first position reducing tuple.
//!
//! ```bash
//! cargo run --release --example positions_and_posind
//! ```

use std::sync::Arc;

use charpos::{corpus, PermGroup, Permutation, PositionContext, SubgroupRecord};

fn main() -> charpos::Result<()> {
    let s3 = corpus::symmetric(3)?;
    let ctx = PositionContext::new(&s3)?;

    println!("cd(S3) = {:?}", ctx.cd());
    for row in 0..ctx.table().len() {
        println!(
            "  irreducible {row}: degree {} at position {}",
            ctx.table().degree(row),
            ctx.pos(row)
        );
    }

    // posind(G, H) over a few named subgroups
    let derived = ctx.derived_record()?;
    println!("posind(S3, A3)  = {}", ctx.posind(&derived)?.value);
    let trivial = Arc::new(SubgroupRecord::new(s3.clone(), PermGroup::trivial(3))?);
    println!("posind(S3, 1)   = {} (= |cd|)", ctx.posind(&trivial)?.value);
    let c2 = PermGroup::from_generators(3, vec![Permutation::parse_cycles("(1 2)", 3)?])?;
    let c2 = Arc::new(SubgroupRecord::new(s3.clone(), c2)?);
    println!("posind(S3, C2)  = {}", ctx.posind(&c2)?.value);

    // (S3, A3, χ₂) is a position reducing tuple: 1 + 1 ≤ 2
    let chi2 = ctx.table().nonlinear_indices()[0];
    let witness = ctx.is_prt(&derived, chi2)?.expect("PRT exists");
    println!(
        "PRT at A3: pos(φ) + posind = {} + {} <= pos(χ) = {}",
        witness.pos_phi, witness.posind, witness.pos_chi
    );

    // by contrast, the faithful degree-2 characters of SL(2,3) admit no PRT
    let sl23 = corpus::sl23()?;
    let ctx = PositionContext::new(&sl23)?;
    for chi in ctx.table().nonlinear_indices() {
        let pr = ctx.is_pr_character(chi)?;
        println!(
            "SL(2,3) row {chi} (degree {}): {}",
            ctx.table().degree(chi),
            match &pr {
                Some(w) => format!("PR via subgroup of order {}", w.record.order()),
                None => "not position reducible".to_string(),
            }
        );
    }
    Ok(())
}

//! Full classification reports for Q8 and SL(2,3), printed as JSON.
//!
//! ```bash
//! cargo run --release --example classify_group
//! ```

use charpos::classify::{ClassifyConfig, Session};
use charpos::corpus;

fn main() -> charpos::Result<()> {
    let session = Session::new(ClassifyConfig::default());

    let q8 = session.classify(&corpus::generalized_quaternion(8)?, "Q8")?;
    println!("{}", serde_json::to_string_pretty(&q8).unwrap());

    let sl = session.classify(&corpus::sl23()?, "SL(2,3)")?;
    println!(
        "\nSL(2,3): taketa {} m {:?} pr {:?} weak_ipr {:?} ipr {:?} (dl = {:?}, cd = {:?})",
        sl.taketa_group, sl.m_group, sl.pr_group, sl.weak_ipr_group, sl.ipr_group,
        sl.derived_length, sl.cd
    );
    assert_eq!(sl.taketa_inequality, Some(true));
    Ok(())
}

//! Runs the inductive position-reducibility search on S4 without the
//! supersolvable shortcut, serialises the resulting certificate, and
//! replays it from its JSON form.
//!
//! ```bash
//! cargo run --release --example ipr_certificates
//! ```

use charpos::classify::{ClassifyConfig, IprCertKind, Session};
use charpos::{corpus, replay_certificate, IprCertificate};

fn print_tree(cert: &IprCertificate, indent: usize) {
    let pad = "  ".repeat(indent);
    match &cert.kind {
        IprCertKind::AbelianLeaf => {
            println!("{pad}order {}: abelian leaf", cert.order);
        }
        IprCertKind::SupersolvableFastPath => {
            println!("{pad}order {}: supersolvable fast path", cert.order);
        }
        IprCertKind::Witnessed { entries } => {
            println!("{pad}order {}: {} witnessed characters", cert.order, entries.len());
            for entry in entries {
                println!(
                    "{pad}  chi {} via H of order {}: {} + {} <= {}",
                    entry.chi,
                    entry.witness.subgroup_order,
                    entry.witness.pos_phi,
                    entry.witness.posind,
                    entry.witness.pos_chi
                );
                print_tree(&entry.child, indent + 2);
            }
        }
    }
}

fn main() -> charpos::Result<()> {
    let group = corpus::symmetric(4)?;
    let session = Session::new(ClassifyConfig {
        fast_paths: false,
        ..ClassifyConfig::default()
    });
    let cert = session
        .is_ipr_group(&group)?
        .expect("S4 is inductively position reducible");

    print_tree(&cert, 0);

    let json = serde_json::to_string_pretty(&*cert).unwrap();
    println!("\nserialized certificate: {} bytes", json.len());

    let parsed: IprCertificate = serde_json::from_str(&json).unwrap();
    replay_certificate(&group, &parsed, 1000)?;
    println!("replay from serialized form: ok");
    Ok(())
}

//! Scans the built-in corpus up to order 48 and prints the aggregate
//! classifier counts. The exit status is nonzero if any verified statement
//! is violated.
//!
//! ```bash
//! cargo run --release --example corpus_scan
//! ```

use charpos::corpus::{default_corpus, scan};

fn main() -> charpos::Result<()> {
    let spec = default_corpus(48);
    let report = scan(&spec)?;

    println!("scanned {} groups up to order {}", report.group_count, spec.order_cap);
    for (flag, count) in &report.aggregates {
        println!("  {flag:<16} {count}");
    }
    println!("violations: {}", report.violations.len());
    println!("unverified: {}", report.unverified.len());

    // the headline implications, checked groupwise
    for group in &report.groups {
        if group.m_group == Some(true) {
            assert_eq!(group.ipr_group, Some(true), "{} breaks M => IPR", group.name);
        }
        if group.taketa_group {
            assert_eq!(group.pr_group, Some(true), "{} breaks Taketa => PR", group.name);
        }
    }
    println!("M => IPR and Taketa => PR hold on every scanned group");

    std::process::exit(if report.violations.is_empty() { 0 } else { 2 });
}

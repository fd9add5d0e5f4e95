//! Exact character tables of small finite groups, character positions, and
//! position-reducibility classifiers.
//!
//! The crate computes character tables of permutation groups with exact
//! cyclotomic arithmetic (Dixon–Schneider over a prime field, lifted back to
//! ℚ(ζ)), and layers on top of them:
//!
//! - positions of irreducible characters within `cd(G)`, minimal/maximal
//!   positions of arbitrary characters, and positional indices of subgroups;
//! - position reducing tuples `(G, H, χ, φ)` and the character predicates
//!   built from them (PR, Taketa, Taketa-PR);
//! - group classifiers (Taketa-, PR-, weak IPR-, IPR-, M-group) with
//!   replayable witnesses and certificates;
//! - a statement-verification suite and a corpus scanner over families of
//!   small groups.
//!
//! Start with the runnable examples:
//!
//! ```bash
//! cargo run --release --example character_table
//! cargo run --release --example positions_and_posind
//! cargo run --release --example classify_group
//! cargo run --release --example sl23_times_c2
//! cargo run --release --example ipr_certificates
//! cargo run --release --example derived_and_d_series
//! cargo run --release --example group_files
//! cargo run --release --example corpus_scan
//! ```
//!
//! A thin `charpos` binary exposes the same functionality as the
//! `table`, `classify`, `posind`, `verify`, and `scan` subcommands.

// index loops over parallel arrays are the norm in the linear-algebra code
#![allow(clippy::needless_range_loop)]

pub mod chartab;
pub mod classes;
pub mod classify;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod groupfile;
pub mod modular;
pub mod perm;
pub mod positions;
pub mod subgroups;

pub use chartab::{
    inner_product, inner_product_raw, kernel, verify_table, verify_table_invariants,
    CharacterTable, ClassFunction, TableText, VerifyReport,
};
pub use classes::ClassTable;
pub use classify::{
    replay_certificate, ClassificationReport, ClassifyConfig, IprCertKind, IprCertificate,
    Session, StatementOutcome, StatementStatus,
};
pub use corpus::{construct, default_corpus, scan, CorpusSpec, ScanReport};
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::{PermGroup, StructuralFlags};
pub use groupfile::{parse_group_file, parse_group_text, write_group_text};
pub use modular::{choose_dixon_prime, lift_value, ModularField};
pub use perm::Permutation;
pub use positions::{Posind, PositionContext, PrtWitness};
pub use subgroups::{all_subgroups, subgroups_up_to_conjugacy, SubgroupRecord};

//! Thin command-line front end over the library: tables, classifications,
//! positional indices, table verification, and corpus scans.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use charpos::classify::{ClassifyConfig, Session};
use charpos::corpus::{default_corpus, scan, CorpusSpec, DEFAULT_ORDER_CAP};
use charpos::error::Result;
use charpos::group::PermGroup;
use charpos::perm::Permutation;
use charpos::positions::PositionContext;
use charpos::subgroups::SubgroupRecord;
use charpos::{verify_table, CharacterTable};

#[derive(Parser)]
#[command(
    name = "charpos",
    about = "Exact character tables, character positions, and position-reducibility classifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit JSON (the default for classify, posind, verify, and scan).
    #[arg(long)]
    json: bool,
    /// Emit plain text (the default for table).
    #[arg(long, conflicts_with = "json")]
    text: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table of a group.
    Table {
        /// Constructor expression (e.g. "symmetric(4)") or a group file path.
        group: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify a group: structural flags, Taketa/PR/weak-IPR/IPR/M status.
    Classify {
        group: String,
        /// Disable the supersolvable shortcut in the IPR search.
        #[arg(long)]
        no_fast_paths: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Positional index of a subgroup: minimum over ψ ∈ Irr(H) of pos_max(ψ^G).
    Posind {
        group: String,
        /// `derived`, `trivial`, or comma-separated generators, e.g. "(1 2),(3 4)".
        selector: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recompute and verify every table invariant plus the statement suite.
    Verify {
        group: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify every group of a corpus and aggregate the results.
    Scan {
        /// Corpus file; the built-in corpus is used when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Order cap for corpus entries.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        no_fast_paths: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Table { group, output } => {
            let g = resolve_group(&group)?;
            let table = CharacterTable::compute(&g)?;
            let body = if output.json {
                let ct = g.class_table();
                let json = serde_json::json!({
                    "order": g.order(),
                    "exponent": ct.exponent(),
                    "classes": ct.classes().iter().map(|c| serde_json::json!({
                        "representative": c.representative.to_string(),
                        "size": c.members.len(),
                        "element_order": c.element_order,
                    })).collect::<Vec<_>>(),
                    "degrees": table.degrees(),
                    "cd": table.cd(),
                    "irreducibles": table.irreducibles().iter().map(|chi| {
                        chi.values().iter().map(|v| v.serialize()).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                });
                serde_json::to_string_pretty(&json).expect("serializable") + "\n"
            } else {
                table.to_text()
            };
            emit(&output, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify {
            group,
            no_fast_paths,
            output,
        } => {
            let g = resolve_group(&group)?;
            let session = Session::new(ClassifyConfig {
                fast_paths: !no_fast_paths,
                ..ClassifyConfig::default()
            });
            let name = g.name().unwrap_or("group").to_string();
            let report = session.classify(&g, &name)?;
            let body = if output.text {
                format!(
                    "{}: order {}, cd {:?}, dl {:?}\n  abelian {} nilpotent {} supersolvable {} solvable {} perfect {}\n  taketa {} m {:?} pr {:?} weak_ipr {:?} ipr {:?}\n",
                    report.name,
                    report.order,
                    report.cd,
                    report.derived_length,
                    report.flags.abelian,
                    report.flags.nilpotent,
                    report.flags.supersolvable,
                    report.flags.solvable,
                    report.flags.perfect,
                    report.taketa_group,
                    report.m_group,
                    report.pr_group,
                    report.weak_ipr_group,
                    report.ipr_group,
                )
            } else {
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            };
            emit(&output, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Posind {
            group,
            selector,
            output,
        } => {
            let g = resolve_group(&group)?;
            let ctx = PositionContext::new(&g)?;
            let record = resolve_selector(&g, &selector)?;
            let posind = ctx.posind(&record)?;
            let body = if output.text {
                format!(
                    "posind = {} (minimizing rows of Irr(H): {:?})\n",
                    posind.value, posind.minimizers
                )
            } else {
                let json = serde_json::json!({
                    "group_order": g.order(),
                    "subgroup_order": record.order(),
                    "posind": posind.value,
                    "minimizers": posind.minimizers,
                });
                serde_json::to_string_pretty(&json).expect("serializable") + "\n"
            };
            emit(&output, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { group, output } => {
            let g = resolve_group(&group)?;
            let table = CharacterTable::compute(&g)?;
            let report = verify_table(&table);
            let session = Session::new(ClassifyConfig::default());
            let ctx = session.context_for(&g)?;
            let statements = session.verify_statements(&ctx)?;
            let ok = report.all_passed()
                && statements
                    .iter()
                    .all(|s| s.status != charpos::StatementStatus::Violated);
            let body = if output.text {
                let mut s = String::new();
                for c in &report.checks {
                    s.push_str(&format!(
                        "{} {}: {}\n",
                        if c.passed { "pass" } else { "FAIL" },
                        c.id,
                        c.detail
                    ));
                }
                for st in &statements {
                    s.push_str(&format!("{:?} {}: {}\n", st.status, st.id, st.detail));
                }
                s
            } else {
                let json = serde_json::json!({
                    "table_checks": report,
                    "statements": statements,
                    "ok": ok,
                });
                serde_json::to_string_pretty(&json).expect("serializable") + "\n"
            };
            emit(&output, &body)?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Scan {
            corpus,
            cap,
            no_fast_paths,
            output,
        } => {
            let mut spec = match corpus {
                Some(path) => CorpusSpec::parse(&std::fs::read_to_string(path)?)?,
                None => default_corpus(cap.unwrap_or(DEFAULT_ORDER_CAP)),
            };
            if let Some(cap) = cap {
                spec.order_cap = cap;
            }
            if no_fast_paths {
                spec.fast_paths = false;
            }
            let report = scan(&spec)?;
            let body = if output.text {
                let mut s = format!(
                    "scanned {} groups (cap {})\n",
                    report.group_count, report.order_cap
                );
                for (flag, count) in &report.aggregates {
                    s.push_str(&format!("  {flag}: {count}\n"));
                }
                s.push_str(&format!(
                    "violations: {}, unverified: {}\n",
                    report.violations.len(),
                    report.unverified.len()
                ));
                s
            } else {
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            };
            emit(&output, &body)?;
            Ok(if report.violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}

/// A group argument is a constructor expression when it parses as one,
/// otherwise a path to a group file.
fn resolve_group(arg: &str) -> Result<Arc<PermGroup>> {
    match charpos::construct(arg) {
        Ok(g) => Ok(g),
        Err(expr_err) => {
            let path = Path::new(arg);
            if path.exists() {
                charpos::parse_group_file(path)
            } else {
                Err(expr_err)
            }
        }
    }
}

fn resolve_selector(group: &Arc<PermGroup>, selector: &str) -> Result<Arc<SubgroupRecord>> {
    let sub = match selector.trim() {
        "derived" => group.derived_subgroup(),
        "trivial" => PermGroup::trivial(group.degree()),
        gens => {
            let parts = split_top_level(gens);
            let perms: Vec<Permutation> = parts
                .iter()
                .map(|p| Permutation::parse_cycles(p, group.degree()))
                .collect::<Result<_>>()?;
            PermGroup::from_generators(group.degree(), perms)?
        }
    };
    Ok(Arc::new(SubgroupRecord::new(group.clone(), sub)?))
}

/// Splits on commas that are not inside parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            ',' if depth == 0 => {
                parts.push(current.trim().to_string());
                current.clear();
            }
            _ => current.push(c),
        }
    }
    if !current.trim().is_empty() {
        parts.push(current.trim().to_string());
    }
    parts
}

fn emit(output: &OutputArgs, body: &str) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

//! The group input file format.
//!
//! ```text
//! # optional comments
//! degree 3
//! name S3
//! (1 2)
//! (1 2 3)
//! ```
//!
//! The header line `degree <n>` must come before any generator; `name` is
//! optional. One generator per line in disjoint cycle notation, `()` for the
//! identity. Blank lines and `#` comments are ignored.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub fn parse_group_text(text: &str) -> Result<Arc<PermGroup>> {
    let mut degree: Option<usize> = None;
    let mut name: Option<String> = None;
    let mut gens: Vec<Permutation> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: ln + 1, msg };
        if let Some(rest) = line.strip_prefix("degree ") {
            if degree.is_some() {
                return Err(err("duplicate degree line".into()));
            }
            let d: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(format!("bad degree '{}'", rest.trim())))?;
            if d == 0 {
                return Err(err("degree must be at least 1".into()));
            }
            degree = Some(d);
        } else if let Some(rest) = line.strip_prefix("name ") {
            name = Some(rest.trim().to_string());
        } else {
            let d = degree.ok_or_else(|| err("generator before the degree line".into()))?;
            let p = Permutation::parse_cycles(line, d)
                .map_err(|e| err(e.to_string()))?;
            gens.push(p);
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: 0,
        msg: "missing degree line".into(),
    })?;
    let group = PermGroup::from_generators(degree, gens)?;
    Ok(match name {
        Some(n) => group.with_name(&n),
        None => group,
    })
}

pub fn parse_group_file(path: &Path) -> Result<Arc<PermGroup>> {
    let text = std::fs::read_to_string(path)?;
    parse_group_text(&text)
}

/// Writes a group in the input format; parsing the result reproduces the
/// generators exactly.
pub fn write_group_text(group: &PermGroup) -> String {
    let mut out = String::new();
    out.push_str(&format!("degree {}\n", group.degree()));
    if let Some(name) = group.name() {
        out.push_str(&format!("name {name}\n"));
    }
    for g in group.generators() {
        out.push_str(&format!("{g}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_s3() {
        let g = parse_group_text("degree 3\n(1 2)\n(1 2 3)\n").unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn header_only_gives_trivial_group() {
        let g = parse_group_text("degree 5\n").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.degree(), 5);
    }

    #[test]
    fn malformed_cycle_reports_line() {
        let err = parse_group_text("degree 3\n(1 2\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let g = parse_group_text("# a comment\n\ndegree 4\nname V4\n(1 2)\n(3 4)\n").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.name(), Some("V4"));
    }

    #[test]
    fn write_then_parse_preserves_generators() {
        let g = crate::corpus::sl23().unwrap();
        let text = write_group_text(&g);
        let parsed = parse_group_text(&text).unwrap();
        assert_eq!(parsed.generators(), g.generators());
        assert!(parsed.same_elements(&g));
        assert_eq!(parsed.name(), g.name());
    }

    #[test]
    fn identity_generator_round_trip() {
        let text = "degree 2\n()\n";
        let g = parse_group_text(text).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.generators().len(), 1);
        let rewritten = write_group_text(&g);
        assert_eq!(rewritten, "degree 2\n()\n");
    }
}

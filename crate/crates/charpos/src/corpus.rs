//! Group constructors, the default corpus, and the corpus-wide scan.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    ClassificationReport, ClassifyConfig, Session, StatementStatus, SCHEMA_VERSION,
};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

fn named(group: Arc<PermGroup>, name: &str) -> Arc<PermGroup> {
    group.with_name(name)
}

/// Cyclic group of order n, acting on n points.
pub fn cyclic(n: usize) -> Result<Arc<PermGroup>> {
    if n == 0 {
        return Err(Error::BadParameter("cyclic(n) needs n ≥ 1".into()));
    }
    let group = if n == 1 {
        PermGroup::trivial(1)
    } else {
        let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        PermGroup::from_generators(n, vec![Permutation::from_images(images)?])?
    };
    Ok(named(group, &format!("C{n}")))
}

/// Dihedral group of the given (even) order ≥ 4.
pub fn dihedral(order: usize) -> Result<Arc<PermGroup>> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(Error::BadParameter(format!(
            "dihedral(order) needs an even order ≥ 4, got {order}"
        )));
    }
    let n = order / 2;
    let group = if n == 2 {
        let a = Permutation::parse_cycles("(1 2)", 4)?;
        let b = Permutation::parse_cycles("(3 4)", 4)?;
        PermGroup::from_generators(4, vec![a, b])?
    } else {
        let rotation: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
        PermGroup::from_generators(
            n,
            vec![
                Permutation::from_images(rotation)?,
                Permutation::from_images(reflection)?,
            ],
        )?
    };
    Ok(named(group, &format!("D{order}")))
}

/// Generalized quaternion group of order 4n ≥ 8, in its regular action.
pub fn generalized_quaternion(order: usize) -> Result<Arc<PermGroup>> {
    if order < 8 || !order.is_multiple_of(4) {
        return Err(Error::BadParameter(format!(
            "generalized_quaternion(order) needs 4 | order and order ≥ 8, got {order}"
        )));
    }
    let half = order / 2; // the cyclic part ⟨a⟩ has order 2n = half·... |a| = order/2
    let n = order / 4;
    // element (i, ε) = a^i b^ε with label ε·half + i
    let label = |i: usize, eps: usize| (eps * half + i) as u32;
    // left multiplication by a: a·(a^j b^ε) = a^{j+1} b^ε
    let mut a_images = vec![0u32; order];
    // left multiplication by b: b·a^j = a^{-j} b, b·(a^j b) = a^{n-j}
    let mut b_images = vec![0u32; order];
    for j in 0..half {
        a_images[label(j, 0) as usize] = label((j + 1) % half, 0);
        a_images[label(j, 1) as usize] = label((j + 1) % half, 1);
        b_images[label(j, 0) as usize] = label((half - j) % half, 1);
        b_images[label(j, 1) as usize] = label((half + n - j) % half, 0);
    }
    let group = PermGroup::from_generators(
        order,
        vec![
            Permutation::from_images(a_images)?,
            Permutation::from_images(b_images)?,
        ],
    )?;
    if group.order() != order {
        return Err(Error::Inconsistent(format!(
            "generalized quaternion construction produced order {}",
            group.order()
        )));
    }
    Ok(named(group, &format!("Q{order}")))
}

/// Symmetric group on n points.
pub fn symmetric(n: usize) -> Result<Arc<PermGroup>> {
    if n == 0 {
        return Err(Error::BadParameter("symmetric(n) needs n ≥ 1".into()));
    }
    let group = if n == 1 {
        PermGroup::trivial(1)
    } else {
        let transposition = Permutation::parse_cycles("(1 2)", n)?;
        let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        PermGroup::from_generators(
            n,
            vec![transposition, Permutation::from_images(cycle)?],
        )?
    };
    Ok(named(group, &format!("S{n}")))
}

/// Alternating group on n points.
pub fn alternating(n: usize) -> Result<Arc<PermGroup>> {
    if n == 0 {
        return Err(Error::BadParameter("alternating(n) needs n ≥ 1".into()));
    }
    let group = if n <= 2 {
        PermGroup::trivial(n.max(1))
    } else if n == 3 {
        PermGroup::from_generators(3, vec![Permutation::parse_cycles("(1 2 3)", 3)?])?
    } else {
        let three_cycle = Permutation::parse_cycles("(1 2 3)", n)?;
        let long = if n % 2 == 1 {
            // the n-cycle is even for odd n
            let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            Permutation::from_images(images)?
        } else {
            // (2 3 … n): an (n-1)-cycle, even for even n
            let mut images: Vec<u32> = (0..n as u32).collect();
            for i in 1..n {
                images[i] = (i % (n - 1) + 1) as u32;
            }
            Permutation::from_images(images)?
        };
        PermGroup::from_generators(n, vec![three_cycle, long])?
    };
    Ok(named(group, &format!("A{n}")))
}

/// Elementary abelian group of order p^k, acting on p·k points.
pub fn elementary_abelian(p: usize, k: usize) -> Result<Arc<PermGroup>> {
    if !crate::modular::is_prime(p as u64) {
        return Err(Error::BadParameter(format!(
            "elementary_abelian(p, k) needs p prime, got {p}"
        )));
    }
    if k == 0 {
        return Err(Error::BadParameter(
            "elementary_abelian(p, k) needs k ≥ 1".into(),
        ));
    }
    let degree = p * k;
    let mut gens = Vec::with_capacity(k);
    for block in 0..k {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for i in 0..p {
            images[block * p + i] = (block * p + (i + 1) % p) as u32;
        }
        gens.push(Permutation::from_images(images)?);
    }
    let group = PermGroup::from_generators(degree, gens)?;
    Ok(named(group, &format!("E{p}^{k}")))
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(a: &Arc<PermGroup>, b: &Arc<PermGroup>) -> Result<Arc<PermGroup>> {
    let degree = a.degree() + b.degree();
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &img) in g.images().iter().enumerate() {
            images[i] = img;
        }
        gens.push(Permutation::from_images(images)?);
    }
    for g in b.generators() {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &img) in g.images().iter().enumerate() {
            images[a.degree() + i] = a.degree() as u32 + img;
        }
        gens.push(Permutation::from_images(images)?);
    }
    let group = PermGroup::from_generators(degree, gens)?;
    let name = format!(
        "{}x{}",
        a.name().unwrap_or("?"),
        b.name().unwrap_or("?")
    );
    Ok(named(group, &name))
}

/// SL₂(3) in its degree-8 action on the nonzero vectors of F₃².
pub fn sl23() -> Result<Arc<PermGroup>> {
    let vectors: Vec<(u8, u8)> = (0..3u8)
        .flat_map(|x| (0..3u8).map(move |y| (x, y)))
        .filter(|&(x, y)| x != 0 || y != 0)
        .collect();
    let index_of = |v: (u8, u8)| vectors.iter().position(|&w| w == v).unwrap() as u32;
    let act = |m: [[u8; 2]; 2]| -> Result<Permutation> {
        let images: Vec<u32> = vectors
            .iter()
            .map(|&(x, y)| {
                let nx = (m[0][0] * x + m[0][1] * y) % 3;
                let ny = (m[1][0] * x + m[1][1] * y) % 3;
                index_of((nx, ny))
            })
            .collect();
        Permutation::from_images(images)
    };
    let s = act([[1, 1], [0, 1]])?;
    let t = act([[0, 2], [1, 0]])?; // [[0, -1], [1, 0]] over F₃
    let group = PermGroup::from_generators(8, vec![s, t])?;
    if group.order() != 24 {
        return Err(Error::Inconsistent(format!(
            "SL(2,3) construction produced order {}",
            group.order()
        )));
    }
    Ok(named(group, "SL(2,3)"))
}

/// The Frobenius group C₇⋊C₃ on 7 points.
pub fn frobenius21() -> Result<Arc<PermGroup>> {
    let shift: Vec<u32> = (0..7u32).map(|i| (i + 1) % 7).collect();
    let double: Vec<u32> = (0..7u32).map(|i| i * 2 % 7).collect();
    let group = PermGroup::from_generators(
        7,
        vec![
            Permutation::from_images(shift)?,
            Permutation::from_images(double)?,
        ],
    )?;
    if group.order() != 21 {
        return Err(Error::Inconsistent(format!(
            "C7⋊C3 construction produced order {}",
            group.order()
        )));
    }
    Ok(named(group, "F21"))
}

/// The extraspecial group of order 27 and exponent 3, in its regular action.
pub fn extraspecial27() -> Result<Arc<PermGroup>> {
    // elements (a, b, c) ∈ F₃³ with (a,b,c)·(a',b',c') = (a+a', b+b', c+c'+a·b')
    let label = |a: usize, b: usize, c: usize| (a * 9 + b * 3 + c) as u32;
    let mut x_images = vec![0u32; 27];
    let mut y_images = vec![0u32; 27];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                // left multiplication by x = (1,0,0): (1+a, b, c+b)
                x_images[label(a, b, c) as usize] = label((a + 1) % 3, b, (c + b) % 3);
                // left multiplication by y = (0,1,0): (a, 1+b, c)
                y_images[label(a, b, c) as usize] = label(a, (b + 1) % 3, c);
            }
        }
    }
    let group = PermGroup::from_generators(
        27,
        vec![
            Permutation::from_images(x_images)?,
            Permutation::from_images(y_images)?,
        ],
    )?;
    if group.order() != 27 {
        return Err(Error::Inconsistent(format!(
            "extraspecial27 construction produced order {}",
            group.order()
        )));
    }
    Ok(named(group, "ES27"))
}

/// Parses a constructor expression such as `cyclic(6)` or
/// `direct_product(sl23(), cyclic(2))`.
pub fn construct(expr: &str) -> Result<Arc<PermGroup>> {
    let mut parser = ExprParser {
        text: expr.as_bytes(),
        pos: 0,
    };
    let group = parser.parse_expr()?;
    parser.skip_ws();
    if parser.pos != parser.text.len() {
        return Err(Error::BadParameter(format!(
            "trailing input in constructor expression '{expr}'"
        )));
    }
    Ok(group)
}

struct ExprParser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn parse_ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.pos < self.text.len() && self.text[self.pos] == c {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_usize(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::BadParameter("expected an integer".into()));
        }
        String::from_utf8_lossy(&self.text[start..self.pos])
            .parse()
            .map_err(|_| Error::BadParameter("integer out of range".into()))
    }

    fn parse_expr(&mut self) -> Result<Arc<PermGroup>> {
        self.skip_ws();
        let name = self.parse_ident();
        if name.is_empty() {
            return Err(Error::BadParameter("expected a constructor name".into()));
        }
        let mut args_ints: Vec<usize> = Vec::new();
        let mut args_groups: Vec<Arc<PermGroup>> = Vec::new();
        if self.eat(b'(') {
            loop {
                self.skip_ws();
                if self.pos < self.text.len() && self.text[self.pos] == b')' {
                    self.pos += 1;
                    break;
                }
                if self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                    args_ints.push(self.parse_usize()?);
                } else {
                    args_groups.push(self.parse_expr()?);
                }
                self.skip_ws();
                if self.eat(b',') {
                    continue;
                }
                if self.eat(b')') {
                    break;
                }
                return Err(Error::BadParameter(format!(
                    "expected ',' or ')' in arguments of '{name}'"
                )));
            }
        }
        let args = |n: usize| -> Result<()> {
            if args_ints.len() == n && args_groups.is_empty() {
                Ok(())
            } else {
                Err(Error::BadParameter(format!(
                    "'{name}' takes {n} integer argument(s)"
                )))
            }
        };
        match name.as_str() {
            "cyclic" => {
                args(1)?;
                cyclic(args_ints[0])
            }
            "dihedral" => {
                args(1)?;
                dihedral(args_ints[0])
            }
            "generalized_quaternion" | "quaternion" => {
                args(1)?;
                generalized_quaternion(args_ints[0])
            }
            "symmetric" => {
                args(1)?;
                symmetric(args_ints[0])
            }
            "alternating" => {
                args(1)?;
                alternating(args_ints[0])
            }
            "elementary_abelian" => {
                args(2)?;
                elementary_abelian(args_ints[0], args_ints[1])
            }
            "direct_product" => {
                if args_groups.len() != 2 || !args_ints.is_empty() {
                    return Err(Error::BadParameter(
                        "direct_product takes two group expressions".into(),
                    ));
                }
                direct_product(&args_groups[0], &args_groups[1])
            }
            "sl23" => {
                args(0)?;
                sl23()
            }
            "frobenius21" => {
                args(0)?;
                frobenius21()
            }
            "extraspecial27" => {
                args(0)?;
                extraspecial27()
            }
            other => Err(Error::UnknownConstructor(other.to_string())),
        }
    }
}

/// One corpus entry: a name and either a constructor expression or a
/// `file:<path>` reference to a group file.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub source: String,
}

#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub entries: Vec<CorpusEntry>,
    pub order_cap: usize,
    pub fast_paths: bool,
    pub lattice_bound: usize,
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.entries {
            if !seen.insert(&e.name) {
                return Err(Error::Precondition(format!(
                    "duplicate corpus entry name '{}'",
                    e.name
                )));
            }
        }
        Ok(())
    }

    /// Parses the corpus file format: `cap <n>`, `fast_paths on|off`,
    /// `lattice_bound <n>`, and `name = <expr-or-file>` lines.
    pub fn parse(text: &str) -> Result<CorpusSpec> {
        let mut spec = CorpusSpec {
            entries: Vec::new(),
            order_cap: DEFAULT_ORDER_CAP,
            fast_paths: true,
            lattice_bound: 48,
        };
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse {
                line: ln + 1,
                msg,
            };
            if let Some(rest) = line.strip_prefix("cap ") {
                spec.order_cap = rest
                    .trim()
                    .parse()
                    .map_err(|_| err("bad cap value".into()))?;
            } else if let Some(rest) = line.strip_prefix("fast_paths ") {
                spec.fast_paths = match rest.trim() {
                    "on" => true,
                    "off" => false,
                    other => return Err(err(format!("bad fast_paths value '{other}'"))),
                };
            } else if let Some(rest) = line.strip_prefix("lattice_bound ") {
                spec.lattice_bound = rest
                    .trim()
                    .parse()
                    .map_err(|_| err("bad lattice_bound value".into()))?;
            } else if let Some((name, source)) = line.split_once('=') {
                spec.entries.push(CorpusEntry {
                    name: name.trim().to_string(),
                    source: source.trim().to_string(),
                });
            } else {
                return Err(err(format!("unrecognised corpus line '{line}'")));
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn resolve_entry(&self, entry: &CorpusEntry) -> Result<Arc<PermGroup>> {
        if let Some(path) = entry.source.strip_prefix("file:") {
            let group = crate::groupfile::parse_group_file(std::path::Path::new(path))?;
            Ok(group.with_name(&entry.name))
        } else {
            Ok(construct(&entry.source)?.with_name(&entry.name))
        }
    }
}

pub const DEFAULT_ORDER_CAP: usize = 96;

/// The built-in corpus: every constructor instantiated through the order
/// cap, plus direct products at the interesting orders 24 and 48.
pub fn default_corpus(order_cap: usize) -> CorpusSpec {
    let mut entries = Vec::new();
    let mut push = |name: String, source: String| {
        entries.push(CorpusEntry { name, source });
    };
    for n in 1..=order_cap {
        push(format!("C{n}"), format!("cyclic({n})"));
    }
    for order in (4..=order_cap).step_by(2) {
        push(format!("D{order}"), format!("dihedral({order})"));
    }
    for order in (8..=order_cap).step_by(4) {
        push(
            format!("Q{order}"),
            format!("generalized_quaternion({order})"),
        );
    }
    for n in 3.. {
        let order: usize = (2..=n).product();
        if order > order_cap {
            break;
        }
        push(format!("S{n}"), format!("symmetric({n})"));
    }
    for n in 4..=5 {
        let half_fact: usize = (2..=n).product::<usize>() / 2;
        if half_fact <= order_cap {
            push(format!("A{n}"), format!("alternating({n})"));
        }
    }
    for p in [2usize, 3, 5, 7] {
        let mut pk = p * p;
        let mut k = 2;
        while pk <= order_cap {
            push(format!("E{p}^{k}"), format!("elementary_abelian({p},{k})"));
            pk *= p;
            k += 1;
        }
    }
    for (name, source, order) in [
        ("F21", "frobenius21()", 21),
        ("SL(2,3)", "sl23()", 24),
        ("ES27", "extraspecial27()", 27),
        ("A4xC2", "direct_product(alternating(4),cyclic(2))", 24),
        ("D8xC3", "direct_product(dihedral(8),cyclic(3))", 24),
        ("Q8xC3", "direct_product(generalized_quaternion(8),cyclic(3))", 24),
        ("S3xC4", "direct_product(symmetric(3),cyclic(4))", 24),
        ("S3xS3", "direct_product(symmetric(3),symmetric(3))", 36),
        ("SL(2,3)xC2", "direct_product(sl23(),cyclic(2))", 48),
        ("S4xC2", "direct_product(symmetric(4),cyclic(2))", 48),
    ] {
        if order <= order_cap {
            push(name.to_string(), source.to_string());
        }
    }
    CorpusSpec {
        entries,
        order_cap,
        fast_paths: true,
        lattice_bound: 48,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanViolation {
    pub group: String,
    pub statement: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanUnverified {
    pub group: String,
    pub item: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub order_cap: usize,
    pub fast_paths: bool,
    pub group_count: usize,
    pub groups: Vec<ClassificationReport>,
    pub aggregates: BTreeMap<String, usize>,
    pub violations: Vec<ScanViolation>,
    pub unverified: Vec<ScanUnverified>,
}

/// Classifies every corpus entry (entries are independent, so they run in
/// parallel; the report is assembled in corpus order).
pub fn scan(spec: &CorpusSpec) -> Result<ScanReport> {
    spec.validate()?;
    let config = ClassifyConfig {
        fast_paths: spec.fast_paths,
        lattice_statement_bound: spec.lattice_bound,
        ..ClassifyConfig::default()
    };
    let reports: Vec<Result<Option<ClassificationReport>>> = spec
        .entries
        .par_iter()
        .map(|entry| {
            let group = spec.resolve_entry(entry)?;
            if group.order() > spec.order_cap {
                return Ok(None);
            }
            let session = Session::new(config.clone());
            session.classify(&group, &entry.name).map(Some)
        })
        .collect();

    let mut groups = Vec::new();
    let mut violations = Vec::new();
    let mut unverified = Vec::new();
    for (entry, result) in spec.entries.iter().zip(reports) {
        match result? {
            None => unverified.push(ScanUnverified {
                group: entry.name.clone(),
                item: "classification".into(),
                reason: format!("order above the corpus cap {}", spec.order_cap),
            }),
            Some(report) => {
                for st in &report.statements {
                    match st.status {
                        StatementStatus::Violated => violations.push(ScanViolation {
                            group: report.name.clone(),
                            statement: st.id.clone(),
                            detail: st.detail.clone(),
                        }),
                        StatementStatus::Skipped => unverified.push(ScanUnverified {
                            group: report.name.clone(),
                            item: st.id.clone(),
                            reason: st.detail.clone(),
                        }),
                        _ => {}
                    }
                }
                for reason in &report.skipped {
                    unverified.push(ScanUnverified {
                        group: report.name.clone(),
                        item: "classifier".into(),
                        reason: reason.clone(),
                    });
                }
                groups.push(report);
            }
        }
    }

    let mut aggregates = BTreeMap::new();
    let mut bump = |key: &str, yes: bool| {
        if yes {
            *aggregates.entry(key.to_string()).or_insert(0) += 1;
        }
    };
    for r in &groups {
        bump("abelian", r.flags.abelian);
        bump("nilpotent", r.flags.nilpotent);
        bump("supersolvable", r.flags.supersolvable);
        bump("solvable", r.flags.solvable);
        bump("perfect", r.flags.perfect);
        bump("taketa_group", r.taketa_group);
        bump("m_group", r.m_group == Some(true));
        bump("pr_group", r.pr_group == Some(true));
        bump("weak_ipr_group", r.weak_ipr_group == Some(true));
        bump("ipr_group", r.ipr_group == Some(true));
    }

    Ok(ScanReport {
        schema_version: SCHEMA_VERSION,
        order_cap: spec.order_cap,
        fast_paths: spec.fast_paths,
        group_count: groups.len(),
        groups,
        aggregates,
        violations,
        unverified,
    })
}

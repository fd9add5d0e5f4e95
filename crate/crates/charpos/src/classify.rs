//! Group-level classifiers with replayable certificates, and the
//! statement-verification suite.
//!
//! A group is a Taketa-group when every irreducible is a Taketa-character,
//! a PR-group when every nonlinear irreducible admits a position reducing
//! tuple, a weak IPR-group when the tuple can be chosen with a Taketa
//! constituent, and an IPR-group when tuples exist recursively with IPR
//! subgroups (abelian groups are the leaves). The IPR search is exhaustive
//! over subgroups up to conjugacy, so a negative answer is definitive
//! rather than "unknown"; hitting a cap is reported separately.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{PermGroup, StructuralFlags, DEFAULT_SUBGROUP_ORDER_CAP};
use crate::perm::Permutation;
use crate::positions::{PositionContext, PrtWitness};
use crate::subgroups::{is_supersolvable, SubgroupRecord};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone)]
pub struct ClassifyConfig {
    pub subgroup_cap: usize,
    /// Allow the supersolvable shortcut inside the IPR search.
    pub fast_paths: bool,
    /// Largest |G| for which the statement suite enumerates the full
    /// subgroup lattice (Prop properties (1), (3), (5)).
    pub lattice_statement_bound: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            subgroup_cap: DEFAULT_SUBGROUP_ORDER_CAP,
            fast_paths: true,
            lattice_statement_bound: 48,
        }
    }
}

/// Serialisable form of a position reducing tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrtWitnessJson {
    pub subgroup_order: usize,
    pub subgroup_generators: Vec<String>,
    pub chi: usize,
    pub phi: usize,
    pub pos_phi: u32,
    pub posind: u32,
    pub pos_chi: u32,
}

impl PrtWitnessJson {
    pub fn from_witness(w: &PrtWitness) -> Self {
        PrtWitnessJson {
            subgroup_order: w.record.order(),
            subgroup_generators: generator_strings(&w.record.subgroup),
            chi: w.chi,
            phi: w.phi,
            pos_phi: w.pos_phi,
            posind: w.posind,
            pos_chi: w.pos_chi,
        }
    }
}

fn generator_strings(group: &Arc<PermGroup>) -> Vec<String> {
    group.generators().iter().map(|g| g.to_string()).collect()
}

/// A replayable certificate that a group is inductively position reducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IprCertificate {
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<String>,
    pub kind: IprCertKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IprCertKind {
    /// No nonlinear irreducibles: vacuously IPR.
    AbelianLeaf,
    /// Accepted by the supersolvable shortcut (fast paths enabled).
    SupersolvableFastPath,
    /// One entry per nonlinear irreducible.
    Witnessed { entries: Vec<IprEntry> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IprEntry {
    pub chi: usize,
    pub witness: PrtWitnessJson,
    pub child: Box<IprCertificate>,
}

/// Witness that an irreducible is induced from a linear character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialWitnessJson {
    pub chi: usize,
    pub subgroup_order: usize,
    pub subgroup_generators: Vec<String>,
    pub phi: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatementStatus {
    Holds,
    Vacuous,
    Violated,
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StatementOutcome {
    pub id: String,
    pub status: StatementStatus,
    pub detail: String,
}

/// Outcome of a per-character classifier over all nonlinear irreducibles.
#[derive(Debug, Clone)]
pub struct CharacterwiseOutcome {
    pub holds: bool,
    /// (row, witness) per nonlinear irreducible, in row order.
    pub witnesses: Vec<(usize, Option<PrtWitness>)>,
}

#[derive(Debug, Clone)]
pub struct MonomialOutcome {
    pub holds: bool,
    pub witnesses: Vec<Option<MonomialWitnessJson>>,
}

/// Shared caches for one classification run: position contexts and IPR
/// statuses are memoised by exact element set within the ambient symmetric
/// group, so recursion over subgroups never recomputes a table.
pub struct Session {
    config: ClassifyConfig,
    contexts: RwLock<HashMap<Vec<u32>, Arc<PositionContext>>>,
    ipr_memo: RwLock<HashMap<Vec<u32>, Option<Arc<IprCertificate>>>>,
}

fn element_key(group: &PermGroup) -> Vec<u32> {
    let mut key = Vec::with_capacity(group.order() * group.degree() + 1);
    key.push(group.degree() as u32);
    for p in group.elements() {
        key.extend_from_slice(p.images());
    }
    key
}

impl Session {
    pub fn new(config: ClassifyConfig) -> Session {
        Session {
            config,
            contexts: RwLock::new(HashMap::new()),
            ipr_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &ClassifyConfig {
        &self.config
    }

    pub fn context_for(&self, group: &Arc<PermGroup>) -> Result<Arc<PositionContext>> {
        let key = element_key(group);
        if let Some(ctx) = self.contexts.read().unwrap().get(&key) {
            return Ok(ctx.clone());
        }
        let ctx = PositionContext::with_cap(group, self.config.subgroup_cap)?;
        self.contexts
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| ctx.clone());
        Ok(ctx)
    }

    /// All irreducibles are Taketa-characters. A positive answer is checked
    /// against its consequences (solvability and the Taketa inequality).
    pub fn is_taketa_group(&self, ctx: &Arc<PositionContext>) -> Result<bool> {
        for row in 0..ctx.table().len() {
            if !ctx.is_taketa_character(row)? {
                return Ok(false);
            }
        }
        let group = ctx.group();
        let dl = group.derived_length().ok_or_else(|| {
            Error::Inconsistent("a Taketa-group must be solvable".into())
        })?;
        if dl > ctx.cd().len() {
            return Err(Error::Inconsistent(
                "a Taketa-group must satisfy the Taketa inequality".into(),
            ));
        }
        Ok(true)
    }

    /// Every nonlinear irreducible is a PR-character.
    pub fn is_pr_group(&self, ctx: &Arc<PositionContext>) -> Result<CharacterwiseOutcome> {
        let mut witnesses = Vec::new();
        let mut holds = true;
        for row in ctx.table().nonlinear_indices() {
            let w = ctx.is_pr_character(row)?;
            holds &= w.is_some();
            witnesses.push((row, w));
        }
        Ok(CharacterwiseOutcome { holds, witnesses })
    }

    /// Every nonlinear irreducible is a Taketa-PR-character.
    pub fn is_weak_ipr_group(&self, ctx: &Arc<PositionContext>) -> Result<CharacterwiseOutcome> {
        let mut witnesses = Vec::new();
        let mut holds = true;
        for row in ctx.table().nonlinear_indices() {
            let w = ctx.is_taketa_pr_character(row)?;
            holds &= w.is_some();
            witnesses.push((row, w));
        }
        Ok(CharacterwiseOutcome { holds, witnesses })
    }

    /// Recursive IPR search with memoisation; `None` is a definitive
    /// negative (the subgroup search is exhaustive up to conjugacy).
    pub fn is_ipr_group(&self, group: &Arc<PermGroup>) -> Result<Option<Arc<IprCertificate>>> {
        let key = element_key(group);
        if let Some(status) = self.ipr_memo.read().unwrap().get(&key) {
            return Ok(status.clone());
        }
        let status = self.compute_ipr(group)?;
        self.ipr_memo
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| status.clone());
        Ok(status)
    }

    fn compute_ipr(&self, group: &Arc<PermGroup>) -> Result<Option<Arc<IprCertificate>>> {
        let base = IprCertificate {
            degree: group.degree(),
            order: group.order(),
            generators: generator_strings(group),
            kind: IprCertKind::AbelianLeaf,
        };
        if group.is_abelian() {
            return Ok(Some(Arc::new(base)));
        }
        if self.config.fast_paths && is_supersolvable(group) {
            return Ok(Some(Arc::new(IprCertificate {
                kind: IprCertKind::SupersolvableFastPath,
                ..base
            })));
        }
        let ctx = self.context_for(group)?;
        let mut entries = Vec::new();
        'rows: for chi in ctx.table().nonlinear_indices() {
            for record in ctx.candidates()?.iter() {
                if let Some(w) = ctx.is_prt(record, chi)? {
                    if let Some(child) = self.is_ipr_group(&record.subgroup)? {
                        entries.push(IprEntry {
                            chi,
                            witness: PrtWitnessJson::from_witness(&w),
                            child: Box::new((*child).clone()),
                        });
                        continue 'rows;
                    }
                }
            }
            return Ok(None);
        }
        Ok(Some(Arc::new(IprCertificate {
            kind: IprCertKind::Witnessed { entries },
            ..base
        })))
    }

    /// Monomiality: every irreducible is induced from a linear character of
    /// some subgroup (searched up to conjugacy with matching index).
    pub fn is_m_group(&self, ctx: &Arc<PositionContext>) -> Result<MonomialOutcome> {
        let table = ctx.table();
        let group = ctx.group();
        let mut witnesses = Vec::with_capacity(table.len());
        let mut holds = true;
        for row in 0..table.len() {
            let degree = table.degree(row);
            if degree == 1 {
                // linear characters are induced from the whole group
                witnesses.push(Some(MonomialWitnessJson {
                    chi: row,
                    subgroup_order: group.order(),
                    subgroup_generators: generator_strings(group),
                    phi: row,
                }));
                continue;
            }
            let target_order = group.order() as u64 / degree;
            let mut found = None;
            'search: for record in ctx.candidates()?.iter() {
                if record.order() as u64 != target_order {
                    continue;
                }
                let ht = ctx.subgroup_table(record)?;
                for phi in ht.linear_indices() {
                    let induced = ht.irreducible(phi).induce(record)?;
                    if &induced == table.irreducible(row) {
                        found = Some(MonomialWitnessJson {
                            chi: row,
                            subgroup_order: record.order(),
                            subgroup_generators: generator_strings(&record.subgroup),
                            phi,
                        });
                        break 'search;
                    }
                }
            }
            holds &= found.is_some();
            witnesses.push(found);
        }
        Ok(MonomialOutcome { holds, witnesses })
    }

    /// Evaluates the fixed statement list; statements whose hypotheses fail
    /// are vacuous, statements beyond a cap are skipped.
    pub fn verify_statements(&self, ctx: &Arc<PositionContext>) -> Result<Vec<StatementOutcome>> {
        let mut out = Vec::new();
        let group = ctx.group();
        let table = ctx.table();
        let n = ctx.cd().len();

        // properties (1), (3), (5) quantify over the whole lattice
        let lattice = if group.order() <= self.config.lattice_statement_bound {
            match crate::subgroups::all_subgroups_capped(group, self.config.subgroup_cap) {
                Ok(records) => Some(records.into_iter().map(Arc::new).collect::<Vec<_>>()),
                Err(Error::SubgroupCapExceeded { .. }) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };

        let derived = ctx.derived_record()?;
        let skipped_lattice = || StatementOutcome {
            id: String::new(),
            status: StatementStatus::Skipped,
            detail: format!("subgroup lattice not enumerated for |G| = {}", group.order()),
        };
        let (p1, p3, p5) = match &lattice {
            None => (None, None, None),
            Some(records) => {
                let posinds: Vec<u32> = records
                    .iter()
                    .map(|r| ctx.posind(r).map(|p| p.value))
                    .collect::<Result<_>>()?;

                let mut monotone = true;
                for (i, small) in records.iter().enumerate() {
                    for (j, large) in records.iter().enumerate() {
                        if i != j && large.contains_record(small) && posinds[i] < posinds[j] {
                            monotone = false;
                        }
                    }
                }
                let mut equiv = true;
                for (i, r) in records.iter().enumerate() {
                    if (posinds[i] == 1) != r.contains_record(&derived) {
                        equiv = false;
                    }
                }
                let mut strict = true;
                for (i, r) in records.iter().enumerate() {
                    if r.is_proper() && posinds[i] as usize >= r.index() {
                        strict = false;
                    }
                }
                (
                    Some((monotone, format!("checked {} subgroups pairwise", records.len()))),
                    Some((equiv, "posind(G,H) = 1 ⇔ G′ ≤ H".to_string())),
                    Some((strict, "posind(G,H) < [G:H] for proper H".to_string())),
                )
            }
        };
        // properties (2) and (4) are cheap and always evaluated
        let full = Arc::new(SubgroupRecord::new(group.clone(), group.clone())?);
        let p2 = ctx.posind(&full)?.value == 1 && ctx.posind(&derived)?.value == 1;
        let trivial = Arc::new(SubgroupRecord::new(
            group.clone(),
            PermGroup::trivial(group.degree()),
        )?);
        let p4 = ctx.posind(&trivial)?.value as usize == n;
        for (id, result) in [
            ("prop.properties.1", p1),
            (
                "prop.properties.2",
                Some((p2, "posind(G,G) = posind(G,G′) = 1".to_string())),
            ),
            ("prop.properties.3", p3),
            (
                "prop.properties.4",
                Some((p4, format!("posind(G,1) = |cd(G)| = {n}"))),
            ),
            ("prop.properties.5", p5),
        ] {
            out.push(match result {
                Some((ok, detail)) => outcome(id, ok, detail),
                None => StatementOutcome {
                    id: id.into(),
                    ..skipped_lattice()
                },
            });
        }

        // Lemma xgr1: (G,G',χ,φ) is a PRT iff pos(φ) < pos(χ)
        let nonlinear = table.nonlinear_indices();
        if derived.is_proper() && !nonlinear.is_empty() {
            let ht = ctx.subgroup_table(&derived)?;
            let mut ok = true;
            for &chi in &nonlinear {
                for (phi, _) in ctx.restricted_constituents(&derived, chi)? {
                    let pos_phi = (ht
                        .cd()
                        .binary_search(&ht.degree(phi))
                        .expect("degree occurs in cd")
                        + 1) as u32;
                    let prt = ctx.is_prt_with(&derived, chi, phi)?;
                    if prt != (pos_phi < ctx.pos(chi)) {
                        ok = false;
                    }
                }
            }
            out.push(outcome(
                "lem.xgr1",
                ok,
                "PRT at G′ ⇔ position drops".into(),
            ));
        } else {
            out.push(StatementOutcome {
                id: "lem.xgr1".into(),
                status: StatementStatus::Vacuous,
                detail: "no nonlinear irreducibles or G is perfect".into(),
            });
        }

        // taketa2: G″ ≤ ker(χ) for nonlinear χ forces a PRT at G′
        {
            let second = group.derived_term(2);
            let mut applicable = false;
            let mut ok = true;
            for &chi in &nonlinear {
                let ker = crate::chartab::kernel(table.irreducible(chi))?;
                if second.elements().iter().all(|p| ker.contains(p)) {
                    applicable = true;
                    if ctx.is_prt(&derived, chi)?.is_none() {
                        ok = false;
                    }
                }
            }
            out.push(if applicable {
                outcome("prop.taketa2", ok, "G″ ≤ ker(χ) ⇒ (G,G′,χ) is a PRT".into())
            } else {
                StatementOutcome {
                    id: "prop.taketa2".into(),
                    status: StatementStatus::Vacuous,
                    detail: "no nonlinear χ with G″ ≤ ker(χ)".into(),
                }
            });
        }

        // pos2: at position 2 the three character predicates coincide
        {
            let pos2_rows: Vec<usize> = (0..table.len())
                .filter(|&r| ctx.pos(r) == 2)
                .collect();
            if pos2_rows.is_empty() {
                out.push(StatementOutcome {
                    id: "prop.pos2".into(),
                    status: StatementStatus::Vacuous,
                    detail: "no irreducible of position 2".into(),
                });
            } else {
                match self.pos2_statement(ctx, &pos2_rows) {
                    Ok(ok) => out.push(outcome(
                        "prop.pos2",
                        ok,
                        format!("characters at position 2: {}", pos2_rows.len()),
                    )),
                    Err(Error::SubgroupCapExceeded { order, cap }) => {
                        out.push(StatementOutcome {
                            id: "prop.pos2".into(),
                            status: StatementStatus::Skipped,
                            detail: format!("subgroup cap {cap} below |G| = {order}"),
                        });
                    }
                    Err(e) => return Err(e),
                }
            }
        }

        // xgr2: Clifford witness with divisibility when (G,G′,χ) is not a PRT
        {
            let mut applicable = false;
            let mut ok = true;
            for &chi in &nonlinear {
                let is_prt_at_derived = if derived.is_proper() {
                    ctx.is_prt(&derived, chi)?.is_some()
                } else {
                    false
                };
                if !is_prt_at_derived {
                    applicable = true;
                    if ctx.clifford_obstruction(chi).is_err() {
                        ok = false;
                    }
                }
            }
            out.push(if applicable {
                outcome(
                    "prop.xgr2",
                    ok,
                    "φ with pos(φ) ≥ pos(χ) and φ(1)·t | χ(1)".into(),
                )
            } else {
                StatementOutcome {
                    id: "prop.xgr2".into(),
                    status: StatementStatus::Vacuous,
                    detail: "every nonlinear χ forms a PRT with G′".into(),
                }
            });
        }

        // D_i theorems need solvability
        if group.is_solvable() {
            let series = ctx.d_series()?;
            let term = |i: usize| -> &Arc<PermGroup> { &series[i.min(series.len() - 1)] };

            let mut di1 = true;
            let mut di2 = true;
            for i in 1..=n {
                let prev = term(i - 1);
                let third = prev.derived_term(3);
                if !contained_in(&third, term(i)) {
                    di1 = false;
                }
                let second = prev.derived_term(2);
                if !contained_in(&second, term(i)) {
                    // dl(D_{i-1}/D_i) = 3: the refinement bound applies
                    let fourth = prev.derived_term(4);
                    if !contained_in(&fourth, term(i + 1)) {
                        di2 = false;
                    }
                }
            }
            out.push(outcome("thm.di.1", di1, "dl(D_{i-1}/D_i) ≤ 3".into()));
            out.push(outcome(
                "thm.di.2",
                di2,
                "dl = 3 steps refine to dl(D_{i-1}/D_{i+1}) ≤ 4".into(),
            ));

            let mut di3 = true;
            for i in 0..=3.min(n) {
                let t = term(n - i);
                match t.derived_length() {
                    Some(dl) if dl <= i => {}
                    _ => di3 = false,
                }
            }
            out.push(outcome("thm.di.3", di3, "dl(D_{n-i}) ≤ i for i ≤ 3".into()));
        } else {
            for id in ["thm.di.1", "thm.di.2", "thm.di.3"] {
                out.push(StatementOutcome {
                    id: id.into(),
                    status: StatementStatus::Vacuous,
                    detail: "G is not solvable".into(),
                });
            }
        }

        // statements conditioned on PR-group status
        let pr_status = match self.is_pr_group(ctx) {
            Ok(outcome) => Some(outcome.holds),
            Err(Error::SubgroupCapExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        match pr_status {
            None => {
                for id in ["cor.d2", "cor.nonperfect", "thm.final.bound"] {
                    out.push(StatementOutcome {
                        id: id.into(),
                        status: StatementStatus::Skipped,
                        detail: "PR status unavailable under the subgroup cap".into(),
                    });
                }
            }
            Some(is_pr) => {
                if is_pr && group.is_solvable() {
                    let series = ctx.d_series()?;
                    let d2 = &series[2.min(series.len() - 1)];
                    let second = group.derived_term(2);
                    out.push(outcome(
                        "cor.d2",
                        contained_in(&second, d2),
                        "dl(G/D₂) ≤ 2 for solvable PR-groups".into(),
                    ));
                } else {
                    out.push(StatementOutcome {
                        id: "cor.d2".into(),
                        status: StatementStatus::Vacuous,
                        detail: "G is not a solvable PR-group".into(),
                    });
                }

                if is_pr && !group.is_abelian() {
                    let d1 = group.derived_subgroup();
                    let d2 = d1.derived_subgroup();
                    out.push(outcome(
                        "cor.nonperfect",
                        d2.order() < d1.order(),
                        "G′ of a nonabelian PR-group is not perfect".into(),
                    ));
                } else {
                    out.push(StatementOutcome {
                        id: "cor.nonperfect".into(),
                        status: StatementStatus::Vacuous,
                        detail: "G is abelian or not a PR-group".into(),
                    });
                }

                if is_pr && group.is_solvable() && n >= 6 {
                    let dl = group.derived_length().expect("solvable");
                    out.push(outcome(
                        "thm.final.bound",
                        dl <= 2 * n - 4,
                        format!("dl = {dl}, bound = {}", 2 * n - 4),
                    ));
                } else {
                    out.push(StatementOutcome {
                        id: "thm.final.bound".into(),
                        status: StatementStatus::Vacuous,
                        detail: "needs a solvable PR-group with |cd(G)| ≥ 6".into(),
                    });
                }
            }
        }

        Ok(out)
    }

    fn pos2_statement(&self, ctx: &Arc<PositionContext>, rows: &[usize]) -> Result<bool> {
        for &chi in rows {
            let pr = ctx.is_pr_character(chi)?.is_some();
            let tpr = ctx.is_taketa_pr_character(chi)?.is_some();
            let tak = ctx.is_taketa_character(chi)?;
            if pr != tpr || tpr != tak {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Full classification of one group.
    pub fn classify(&self, group: &Arc<PermGroup>, name: &str) -> Result<ClassificationReport> {
        let ctx = self.context_for(group)?;
        let flags = group.structural_predicates();
        let derived_length = group.derived_length();
        let cd = ctx.cd().to_vec();
        let taketa_group = self.is_taketa_group(&ctx)?;
        let taketa_inequality = derived_length.map(|dl| dl <= cd.len());

        let mut skipped = Vec::new();
        let mut catch = |what: &str, e: Error| -> Result<()> {
            match e {
                Error::SubgroupCapExceeded { order, cap } => {
                    skipped.push(format!("{what}: subgroup cap {cap} below |G| = {order}"));
                    Ok(())
                }
                other => Err(other),
            }
        };

        let mut m_group = None;
        let mut monomial_witnesses = Vec::new();
        match self.is_m_group(&ctx) {
            Ok(m) => {
                m_group = Some(m.holds);
                monomial_witnesses = m.witnesses.into_iter().flatten().collect();
            }
            Err(e) => catch("m_group", e)?,
        }

        let mut pr_group = None;
        let mut pr_witnesses = Vec::new();
        match self.is_pr_group(&ctx) {
            Ok(o) => {
                pr_group = Some(o.holds);
                pr_witnesses = o
                    .witnesses
                    .iter()
                    .filter_map(|(_, w)| w.as_ref().map(PrtWitnessJson::from_witness))
                    .collect();
            }
            Err(e) => catch("pr_group", e)?,
        }

        let mut weak_ipr_group = None;
        let mut weak_ipr_witnesses = Vec::new();
        match self.is_weak_ipr_group(&ctx) {
            Ok(o) => {
                weak_ipr_group = Some(o.holds);
                weak_ipr_witnesses = o
                    .witnesses
                    .iter()
                    .filter_map(|(_, w)| w.as_ref().map(PrtWitnessJson::from_witness))
                    .collect();
            }
            Err(e) => catch("weak_ipr_group", e)?,
        }

        let mut ipr_group = None;
        let mut ipr_certificate = None;
        match self.is_ipr_group(group) {
            Ok(status) => {
                ipr_group = Some(status.is_some());
                ipr_certificate = status.map(|c| (*c).clone());
            }
            Err(e) => catch("ipr_group", e)?,
        }

        let statements = self.verify_statements(&ctx)?;

        let report = ClassificationReport {
            schema_version: SCHEMA_VERSION,
            name: name.to_string(),
            order: group.order(),
            degree: group.degree(),
            flags,
            derived_length,
            cd,
            cd_count: ctx.cd().len(),
            taketa_inequality,
            taketa_group,
            m_group,
            pr_group,
            weak_ipr_group,
            ipr_group,
            implications_ok: true,
            skipped,
            pr_witnesses,
            weak_ipr_witnesses,
            monomial_witnesses,
            ipr_certificate,
            statements,
        };
        enforce_implications(&report)?;
        Ok(report)
    }
}

fn outcome(id: &str, ok: bool, detail: String) -> StatementOutcome {
    StatementOutcome {
        id: id.into(),
        status: if ok {
            StatementStatus::Holds
        } else {
            StatementStatus::Violated
        },
        detail,
    }
}

fn contained_in(small: &Arc<PermGroup>, large: &Arc<PermGroup>) -> bool {
    small.elements().iter().all(|p| large.contains(p))
}

/// The implication chain that every report must satisfy:
/// IPR ⇒ weak IPR ⇒ Taketa ⇒ (solvable ∧ dl ≤ |cd|), M ⇒ PR, M ⇒ weak IPR.
fn enforce_implications(report: &ClassificationReport) -> Result<()> {
    let fail = |msg: &str| Err(Error::Inconsistent(format!("implication chain: {msg}")));
    if report.ipr_group == Some(true) && report.weak_ipr_group == Some(false) {
        return fail("IPR but not weak IPR");
    }
    if report.weak_ipr_group == Some(true) && !report.taketa_group {
        return fail("weak IPR but not Taketa");
    }
    if report.taketa_group {
        if !report.flags.solvable {
            return fail("Taketa-group but not solvable");
        }
        if report.taketa_inequality != Some(true) {
            return fail("Taketa-group violating the Taketa inequality");
        }
    }
    if report.m_group == Some(true) && report.pr_group == Some(false) {
        return fail("M-group but not PR");
    }
    if report.m_group == Some(true) && report.weak_ipr_group == Some(false) {
        return fail("M-group but not weak IPR");
    }
    if report.derived_length.is_some_and(|dl| dl <= 2) && report.ipr_group == Some(false) {
        return fail("dl ≤ 2 but not IPR");
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub name: String,
    pub order: usize,
    pub degree: usize,
    pub flags: StructuralFlags,
    pub derived_length: Option<usize>,
    pub cd: Vec<u64>,
    pub cd_count: usize,
    /// `dl(G) ≤ |cd(G)|`; reported only for solvable groups.
    pub taketa_inequality: Option<bool>,
    pub taketa_group: bool,
    pub m_group: Option<bool>,
    pub pr_group: Option<bool>,
    pub weak_ipr_group: Option<bool>,
    pub ipr_group: Option<bool>,
    pub implications_ok: bool,
    pub skipped: Vec<String>,
    pub pr_witnesses: Vec<PrtWitnessJson>,
    pub weak_ipr_witnesses: Vec<PrtWitnessJson>,
    pub monomial_witnesses: Vec<MonomialWitnessJson>,
    pub ipr_certificate: Option<IprCertificate>,
    pub statements: Vec<StatementOutcome>,
}

/// Re-validates a serialised certificate from scratch: rebuilds every
/// subgroup from its generators, recomputes the three numbers of each
/// inequality, and recurses into children.
pub fn replay_certificate(
    group: &Arc<PermGroup>,
    cert: &IprCertificate,
    subgroup_cap: usize,
) -> Result<()> {
    let fail = |msg: String| Err(Error::Inconsistent(format!("certificate replay: {msg}")));
    if cert.degree != group.degree() || cert.order != group.order() {
        return fail("degree or order mismatch".into());
    }
    let gens: Vec<Permutation> = cert
        .generators
        .iter()
        .map(|s| Permutation::parse_cycles(s, cert.degree))
        .collect::<Result<_>>()?;
    let regenerated = PermGroup::from_generators_capped(cert.degree, gens, group.order())?;
    if !regenerated.same_elements(group) {
        return fail("generators do not reproduce the certified group".into());
    }
    match &cert.kind {
        IprCertKind::AbelianLeaf => {
            if !group.is_abelian() {
                return fail("abelian leaf for a nonabelian group".into());
            }
            Ok(())
        }
        IprCertKind::SupersolvableFastPath => {
            if !is_supersolvable(group) {
                return fail("fast-path leaf for a non-supersolvable group".into());
            }
            Ok(())
        }
        IprCertKind::Witnessed { entries } => {
            let ctx = PositionContext::with_cap(group, subgroup_cap)?;
            let expected: Vec<usize> = ctx.table().nonlinear_indices();
            let covered: Vec<usize> = entries.iter().map(|e| e.chi).collect();
            if covered != expected {
                return fail(format!(
                    "entries cover rows {covered:?} instead of {expected:?}"
                ));
            }
            for entry in entries {
                let w = &entry.witness;
                let gens: Vec<Permutation> = w
                    .subgroup_generators
                    .iter()
                    .map(|s| Permutation::parse_cycles(s, cert.degree))
                    .collect::<Result<_>>()?;
                let sub = PermGroup::from_generators_capped(cert.degree, gens, group.order())?;
                if sub.order() != w.subgroup_order || sub.order() >= group.order() {
                    return fail("witness subgroup has the wrong order".into());
                }
                let record = Arc::new(SubgroupRecord::new(group.clone(), sub)?);
                if !ctx.is_prt_with(&record, entry.chi, w.phi)? {
                    return fail(format!("witness inequality fails for chi {}", entry.chi));
                }
                let ht = ctx.subgroup_table(&record)?;
                let pos_phi = (ht
                    .cd()
                    .binary_search(&ht.degree(w.phi))
                    .expect("degree occurs in cd")
                    + 1) as u32;
                let posind = ctx.posind(&record)?.value;
                let pos_chi = ctx.pos(entry.chi);
                if (pos_phi, posind, pos_chi) != (w.pos_phi, w.posind, w.pos_chi) {
                    return fail(format!(
                        "serialized numbers ({}, {}, {}) differ from recomputed ({pos_phi}, {posind}, {pos_chi})",
                        w.pos_phi, w.posind, w.pos_chi
                    ));
                }
                replay_certificate(&record.subgroup, &entry.child, subgroup_cap)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn session() -> Session {
        Session::new(ClassifyConfig::default())
    }

    fn strict_session() -> Session {
        Session::new(ClassifyConfig {
            fast_paths: false,
            ..ClassifyConfig::default()
        })
    }

    #[test]
    fn taketa_group_examples() {
        let s = session();
        // abelian: trivially Taketa
        let c = s.context_for(&corpus::cyclic(12).unwrap()).unwrap();
        assert!(s.is_taketa_group(&c).unwrap());
        // Q8 is a Taketa-group
        let q = s
            .context_for(&corpus::generalized_quaternion(8).unwrap())
            .unwrap();
        assert!(s.is_taketa_group(&q).unwrap());
        // SL(2,3) is not
        let sl = s.context_for(&corpus::sl23().unwrap()).unwrap();
        assert!(!s.is_taketa_group(&sl).unwrap());
    }

    #[test]
    fn pr_group_examples() {
        let s = session();
        let ab = s.context_for(&corpus::cyclic(5).unwrap()).unwrap();
        assert!(s.is_pr_group(&ab).unwrap().holds);
        let s4 = s.context_for(&corpus::symmetric(4).unwrap()).unwrap();
        assert!(s.is_pr_group(&s4).unwrap().holds);
        let a5 = s.context_for(&corpus::alternating(5).unwrap()).unwrap();
        assert!(!s.is_pr_group(&a5).unwrap().holds);
        let sl = s.context_for(&corpus::sl23().unwrap()).unwrap();
        assert!(!s.is_pr_group(&sl).unwrap().holds);
    }

    #[test]
    fn ipr_examples_with_and_without_fast_paths() {
        for s in [session(), strict_session()] {
            assert!(s
                .is_ipr_group(&corpus::dihedral(8).unwrap())
                .unwrap()
                .is_some());
            assert!(s
                .is_ipr_group(&corpus::generalized_quaternion(8).unwrap())
                .unwrap()
                .is_some());
            // dl(S3) = 2 ⇒ IPR
            assert!(s
                .is_ipr_group(&corpus::symmetric(3).unwrap())
                .unwrap()
                .is_some());
            assert!(s.is_ipr_group(&corpus::sl23().unwrap()).unwrap().is_none());
        }
    }

    #[test]
    fn m_group_examples() {
        let s = session();
        let d8 = s.context_for(&corpus::dihedral(8).unwrap()).unwrap();
        assert!(s.is_m_group(&d8).unwrap().holds);
        let s4 = s.context_for(&corpus::symmetric(4).unwrap()).unwrap();
        let m = s.is_m_group(&s4).unwrap();
        assert!(m.holds);
        // witnesses for the degree-3 characters come from order-8 subgroups
        let deg3: Vec<&MonomialWitnessJson> = m
            .witnesses
            .iter()
            .flatten()
            .filter(|w| w.subgroup_order == 8)
            .collect();
        assert_eq!(deg3.len(), 2);
        let sl = s.context_for(&corpus::sl23().unwrap()).unwrap();
        assert!(!s.is_m_group(&sl).unwrap().holds);
    }

    #[test]
    fn classify_q8_and_sl23() {
        let s = session();
        let q8 = s
            .classify(&corpus::generalized_quaternion(8).unwrap(), "Q8")
            .unwrap();
        assert_eq!(q8.cd, vec![1, 2]);
        assert_eq!(q8.derived_length, Some(2));
        assert_eq!(
            (q8.m_group, q8.pr_group, q8.weak_ipr_group, q8.ipr_group),
            (Some(true), Some(true), Some(true), Some(true))
        );
        assert!(q8.taketa_group);

        let sl = s.classify(&corpus::sl23().unwrap(), "SL(2,3)").unwrap();
        assert_eq!(sl.cd, vec![1, 2, 3]);
        assert_eq!(sl.derived_length, Some(3));
        assert!(sl.flags.solvable);
        assert_eq!(
            (sl.m_group, sl.pr_group, sl.weak_ipr_group, sl.ipr_group),
            (Some(false), Some(false), Some(false), Some(false))
        );
        assert!(!sl.taketa_group);
        assert_eq!(sl.taketa_inequality, Some(true));
        assert!(sl
            .statements
            .iter()
            .all(|s| s.status != StatementStatus::Violated));
    }

    #[test]
    fn classify_a5() {
        let s = session();
        let a5 = s.classify(&corpus::alternating(5).unwrap(), "A5").unwrap();
        assert!(a5.flags.perfect);
        assert!(!a5.flags.solvable);
        assert_eq!(a5.pr_group, Some(false));
        assert_eq!(a5.taketa_inequality, None);
        assert!(a5
            .statements
            .iter()
            .all(|s| s.status != StatementStatus::Violated));
    }

    #[test]
    fn certificates_replay() {
        for s in [session(), strict_session()] {
            for g in [
                corpus::symmetric(4).unwrap(),
                corpus::dihedral(12).unwrap(),
                corpus::generalized_quaternion(8).unwrap(),
            ] {
                let cert = s.is_ipr_group(&g).unwrap().expect("IPR");
                // serialize → deserialize → replay
                let json = serde_json::to_string(&*cert).unwrap();
                let parsed: IprCertificate = serde_json::from_str(&json).unwrap();
                replay_certificate(&g, &parsed, DEFAULT_SUBGROUP_ORDER_CAP).unwrap();
            }
        }
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let s = strict_session();
        let g = corpus::symmetric(4).unwrap();
        let cert = s.is_ipr_group(&g).unwrap().unwrap();
        let mut tampered = (*cert).clone();
        if let IprCertKind::Witnessed { entries } = &mut tampered.kind {
            entries[0].witness.pos_chi += 1;
        }
        assert!(replay_certificate(&g, &tampered, DEFAULT_SUBGROUP_ORDER_CAP).is_err());
    }

    #[test]
    fn statements_hold_on_small_groups() {
        let s = session();
        for g in [
            corpus::symmetric(3).unwrap(),
            corpus::symmetric(4).unwrap(),
            corpus::sl23().unwrap(),
            corpus::alternating(4).unwrap(),
            corpus::cyclic(8).unwrap(),
        ] {
            let ctx = s.context_for(&g).unwrap();
            for st in s.verify_statements(&ctx).unwrap() {
                assert_ne!(
                    st.status,
                    StatementStatus::Violated,
                    "{} violated on order {}: {}",
                    st.id,
                    g.order(),
                    st.detail
                );
            }
        }
    }

    #[test]
    fn monomial_characters_are_pr_and_taketa_pr() {
        // a monomial nonlinear irreducible always admits a PRT, with a
        // linear (hence Taketa) constituent available
        let s = session();
        for g in [
            corpus::symmetric(4).unwrap(),
            corpus::sl23().unwrap(),
            corpus::dihedral(16).unwrap(),
            corpus::frobenius21().unwrap(),
        ] {
            let ctx = s.context_for(&g).unwrap();
            let m = s.is_m_group(&ctx).unwrap();
            for witness in m.witnesses.iter().flatten() {
                if ctx.table().degree(witness.chi) == 1 {
                    continue;
                }
                assert!(
                    ctx.is_pr_character(witness.chi).unwrap().is_some(),
                    "monomial row {} of order-{} group is not PR",
                    witness.chi,
                    g.order()
                );
                assert!(ctx.is_taketa_pr_character(witness.chi).unwrap().is_some());
            }
        }
    }

    #[test]
    fn cap_produces_partial_report() {
        let s = Session::new(ClassifyConfig {
            subgroup_cap: 10,
            ..ClassifyConfig::default()
        });
        let report = s.classify(&corpus::symmetric(4).unwrap(), "S4").unwrap();
        // classifiers needing the lattice are skipped, not failed
        assert_eq!(report.m_group, None);
        assert_eq!(report.pr_group, None);
        assert_eq!(report.ipr_group, None);
        assert!(!report.skipped.is_empty());
        // cheap classifiers still run
        assert!(report.taketa_group);
        assert!(report
            .statements
            .iter()
            .any(|st| st.status == StatementStatus::Skipped));
        assert!(report
            .statements
            .iter()
            .all(|st| st.status != StatementStatus::Violated));
    }

    #[test]
    fn s4_d2_containment() {
        // S4: G″ = V4 and D₂ = V4
        let s = session();
        let g = corpus::symmetric(4).unwrap();
        let ctx = s.context_for(&g).unwrap();
        let series = ctx.d_series().unwrap();
        let second = g.derived_term(2);
        assert_eq!(series[2].order(), 4);
        assert!(second.same_elements(&series[2]));
    }
}

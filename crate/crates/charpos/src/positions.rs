//! Character positions, positional indices of subgroups, and position
//! reducing tuples.
//!
//! The position of an irreducible character is the rank of its degree in
//! `cd(G)`, counted from 1. Positions of characters of a subgroup H are
//! always taken relative to `cd(H)`, never `cd(G)`. A tuple `(G, H, χ, φ)`
//! with `H < G` and `φ` a constituent of `χ_H` is position reducing when
//! `pos(φ) + posind(G, H) ≤ pos(χ)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::chartab::{kernel, CharacterTable, ClassFunction};
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_SUBGROUP_ORDER_CAP};
use crate::subgroups::{subgroups_up_to_conjugacy_capped, SubgroupRecord};

/// A positional index value together with the irreducibles attaining it.
#[derive(Debug, Clone)]
pub struct Posind {
    pub value: u32,
    /// Row indices (in the subgroup's table) of the minimizing characters.
    pub minimizers: Vec<usize>,
}

/// A verified position reducing tuple.
#[derive(Clone)]
pub struct PrtWitness {
    pub record: Arc<SubgroupRecord>,
    /// Row of χ in the parent table.
    pub chi: usize,
    /// Row of φ in the subgroup table.
    pub phi: usize,
    pub pos_phi: u32,
    pub posind: u32,
    pub pos_chi: u32,
}

impl std::fmt::Debug for PrtWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PRT(H order {}, chi {}, phi {}, {} + {} <= {})",
            self.record.order(),
            self.chi,
            self.phi,
            self.pos_phi,
            self.posind,
            self.pos_chi
        )
    }
}

#[derive(Clone, Debug)]
enum CacheErr {
    Cap { order: usize, cap: usize },
    Other(String),
}

impl From<&Error> for CacheErr {
    fn from(e: &Error) -> Self {
        match e {
            Error::SubgroupCapExceeded { order, cap } => CacheErr::Cap {
                order: *order,
                cap: *cap,
            },
            other => CacheErr::Other(other.to_string()),
        }
    }
}

impl From<CacheErr> for Error {
    fn from(e: CacheErr) -> Self {
        match e {
            CacheErr::Cap { order, cap } => Error::SubgroupCapExceeded { order, cap },
            CacheErr::Other(msg) => Error::Inconsistent(msg),
        }
    }
}

/// A group with its character table and the caches needed to evaluate
/// position predicates: subgroup tables, positional indices, and the proper
/// subgroup candidates in search preference order.
pub struct PositionContext {
    group: Arc<PermGroup>,
    table: Arc<CharacterTable>,
    subgroup_cap: usize,
    derived_record: OnceLock<std::result::Result<Arc<SubgroupRecord>, CacheErr>>,
    candidates: OnceLock<std::result::Result<Arc<Vec<Arc<SubgroupRecord>>>, CacheErr>>,
    sub_tables: RwLock<HashMap<Vec<u32>, Arc<CharacterTable>>>,
    posind_cache: RwLock<HashMap<Vec<u32>, Arc<Posind>>>,
}

impl PositionContext {
    pub fn new(group: &Arc<PermGroup>) -> Result<Arc<PositionContext>> {
        Self::with_cap(group, DEFAULT_SUBGROUP_ORDER_CAP)
    }

    pub fn with_cap(group: &Arc<PermGroup>, subgroup_cap: usize) -> Result<Arc<PositionContext>> {
        let table = CharacterTable::compute(group)?;
        Ok(Arc::new(PositionContext {
            group: group.clone(),
            table,
            subgroup_cap,
            derived_record: OnceLock::new(),
            candidates: OnceLock::new(),
            sub_tables: RwLock::new(HashMap::new()),
            posind_cache: RwLock::new(HashMap::new()),
        }))
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn cd(&self) -> &[u64] {
        self.table.cd()
    }

    /// Position of an irreducible row: the rank of its degree in cd(G).
    pub fn pos(&self, row: usize) -> u32 {
        self.pos_of_degree(self.table.degree(row))
            .expect("row degrees occur in cd")
    }

    pub fn pos_of_degree(&self, degree: u64) -> Option<u32> {
        self.table
            .cd()
            .binary_search(&degree)
            .ok()
            .map(|i| (i + 1) as u32)
    }

    /// Minimal and maximal positions over the irreducible constituents.
    pub fn pos_extrema(&self, theta: &ClassFunction) -> Result<(u32, u32)> {
        if theta.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        let parts = self.table.constituents(theta)?;
        if parts.is_empty() {
            return Err(Error::ZeroCharacter);
        }
        // rows are sorted by degree, so the first and last constituents have
        // the extreme positions
        let min = self.pos(parts[0].0);
        let max = self.pos(parts[parts.len() - 1].0);
        Ok((min, max))
    }

    /// Character table of a subgroup, cached by canonical key.
    pub fn subgroup_table(&self, record: &SubgroupRecord) -> Result<Arc<CharacterTable>> {
        if let Some(t) = self
            .sub_tables
            .read()
            .unwrap()
            .get(&record.member_indices)
        {
            return Ok(t.clone());
        }
        let t = CharacterTable::compute(&record.subgroup)?;
        self.sub_tables
            .write()
            .unwrap()
            .entry(record.member_indices.clone())
            .or_insert_with(|| t.clone());
        Ok(t)
    }

    /// posind(G, H) = min over ψ ∈ Irr(H) of pos_max(ψ^G), with minimizers.
    pub fn posind(&self, record: &SubgroupRecord) -> Result<Arc<Posind>> {
        if !record.parent.same_elements(&self.group) {
            return Err(Error::GroupMismatch);
        }
        if let Some(p) = self.posind_cache.read().unwrap().get(&record.member_indices) {
            return Ok(p.clone());
        }
        let ht = self.subgroup_table(record)?;
        let mut best: Option<u32> = None;
        let mut minimizers = Vec::new();
        for (row, psi) in ht.irreducibles().iter().enumerate() {
            let induced = psi.induce(record)?;
            let (_, max) = self.pos_extrema(&induced)?;
            match best {
                Some(b) if max > b => {}
                Some(b) if max == b => minimizers.push(row),
                _ => {
                    best = Some(max);
                    minimizers = vec![row];
                }
            }
        }
        let result = Arc::new(Posind {
            value: best.expect("subgroup has at least one irreducible"),
            minimizers,
        });
        self.posind_cache
            .write()
            .unwrap()
            .entry(record.member_indices.clone())
            .or_insert_with(|| result.clone());
        Ok(result)
    }

    /// The derived subgroup as an embedded record.
    pub fn derived_record(&self) -> Result<Arc<SubgroupRecord>> {
        self.derived_record
            .get_or_init(|| {
                SubgroupRecord::new(self.group.clone(), self.group.derived_subgroup())
                    .map(Arc::new)
                    .map_err(|e| CacheErr::from(&e))
            })
            .clone()
            .map_err(Error::from)
    }

    /// Proper subgroups up to conjugacy in witness preference order:
    /// G′ first, then decreasing order, then canonical key.
    pub fn candidates(&self) -> Result<Arc<Vec<Arc<SubgroupRecord>>>> {
        self.candidates
            .get_or_init(|| {
                let derived_key: Vec<u32> = match self.derived_record() {
                    Ok(r) => r.member_indices.clone(),
                    Err(e) => return Err(CacheErr::from(&e)),
                };
                match subgroups_up_to_conjugacy_capped(&self.group, self.subgroup_cap) {
                    Ok(all) => {
                        let mut records: Vec<Arc<SubgroupRecord>> = all
                            .into_iter()
                            .filter(|r| r.is_proper())
                            .map(Arc::new)
                            .collect();
                        records.sort_by(|a, b| {
                            let a_key = (
                                a.member_indices != derived_key,
                                std::cmp::Reverse(a.order()),
                                a.member_indices.clone(),
                            );
                            let b_key = (
                                b.member_indices != derived_key,
                                std::cmp::Reverse(b.order()),
                                b.member_indices.clone(),
                            );
                            a_key.cmp(&b_key)
                        });
                        Ok(Arc::new(records))
                    }
                    Err(e) => Err(CacheErr::from(&e)),
                }
            })
            .clone()
            .map_err(Error::from)
    }

    /// Constituents of χ restricted to H, as rows of H's table.
    pub fn restricted_constituents(
        &self,
        record: &SubgroupRecord,
        chi: usize,
    ) -> Result<Vec<(usize, u64)>> {
        let ht = self.subgroup_table(record)?;
        let restricted = self.table.irreducible(chi).restrict(record)?;
        ht.constituents(&restricted)
    }

    /// Checks `(G, H, χ)` by the minimal-position shortcut; returns the
    /// witness with φ a minimal-position constituent of χ_H.
    pub fn is_prt(
        self: &Arc<Self>,
        record: &Arc<SubgroupRecord>,
        chi: usize,
    ) -> Result<Option<PrtWitness>> {
        if !record.is_proper() {
            return Err(Error::SubgroupNotProper);
        }
        let ht = self.subgroup_table(record)?;
        let parts = self.restricted_constituents(record, chi)?;
        if parts.is_empty() {
            return Err(Error::Inconsistent("restriction has no constituents".into()));
        }
        let h_cd = ht.cd();
        let phi = parts[0].0; // rows sorted by degree: first = minimal position
        let pos_phi = (h_cd
            .binary_search(&ht.degree(phi))
            .expect("degree occurs in cd")
            + 1) as u32;
        let posind = self.posind(record)?.value;
        let pos_chi = self.pos(chi);
        if pos_phi + posind <= pos_chi {
            Ok(Some(PrtWitness {
                record: record.clone(),
                chi,
                phi,
                pos_phi,
                posind,
                pos_chi,
            }))
        } else {
            Ok(None)
        }
    }

    /// Checks `(G, H, χ, φ)` for a specific constituent φ.
    pub fn is_prt_with(
        self: &Arc<Self>,
        record: &Arc<SubgroupRecord>,
        chi: usize,
        phi: usize,
    ) -> Result<bool> {
        if !record.is_proper() {
            return Err(Error::SubgroupNotProper);
        }
        let ht = self.subgroup_table(record)?;
        let parts = self.restricted_constituents(record, chi)?;
        if !parts.iter().any(|&(row, _)| row == phi) {
            return Ok(false);
        }
        let pos_phi = (ht
            .cd()
            .binary_search(&ht.degree(phi))
            .expect("degree occurs in cd")
            + 1) as u32;
        let posind = self.posind(record)?.value;
        Ok(pos_phi + posind <= self.pos(chi))
    }

    /// Searches proper subgroups (up to conjugacy, G′ first) for a PRT.
    pub fn is_pr_character(self: &Arc<Self>, chi: usize) -> Result<Option<PrtWitness>> {
        if self.table.degree(chi) == 1 {
            return Ok(None); // a linear character is never position reducible
        }
        for record in self.candidates()?.iter() {
            if let Some(w) = self.is_prt(record, chi)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    /// `G^{(pos χ)} ≤ ker(χ)`.
    pub fn is_taketa_character(&self, chi: usize) -> Result<bool> {
        let i = self.pos(chi) as usize;
        let term = self.group.derived_term(i);
        let ker = kernel(self.table.irreducible(chi))?;
        Ok(term.elements().iter().all(|p| ker.contains(p)))
    }

    /// A PRT whose φ is a Taketa-character of H (in H's own context).
    pub fn is_taketa_pr_character(self: &Arc<Self>, chi: usize) -> Result<Option<PrtWitness>> {
        if self.table.degree(chi) == 1 {
            return Ok(None);
        }
        let pos_chi = self.pos(chi);
        for record in self.candidates()?.iter() {
            let posind = self.posind(record)?.value;
            if posind >= pos_chi {
                continue;
            }
            let budget = pos_chi - posind;
            let ht = self.subgroup_table(record)?;
            for (phi, _) in self.restricted_constituents(record, chi)? {
                let pos_phi = (ht
                    .cd()
                    .binary_search(&ht.degree(phi))
                    .expect("degree occurs in cd")
                    + 1) as u32;
                if pos_phi > budget {
                    break; // constituents come in increasing degree order
                }
                if is_taketa_row(&record.subgroup, &ht, phi)? {
                    return Ok(Some(PrtWitness {
                        record: record.clone(),
                        chi,
                        phi,
                        pos_phi,
                        posind,
                        pos_chi,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Clifford witness when `(G, G′, χ)` is not a PRT: a constituent φ of
    /// χ_{G′} with pos(φ) ≥ pos(χ) such that φ(1)·t divides χ(1), t the
    /// orbit size of φ under conjugation by G.
    pub fn clifford_obstruction(
        self: &Arc<Self>,
        chi: usize,
    ) -> Result<(usize, u64)> {
        if self.table.degree(chi) == 1 {
            return Err(Error::Precondition("χ must be nonlinear".into()));
        }
        let record = self.derived_record()?;
        if record.is_proper()
            && self.is_prt(&record, chi)?.is_some() {
                return Err(Error::Precondition(
                    "(G, G′, χ) is a PRT; no Clifford obstruction exists".into(),
                ));
            }
        let ht = self.subgroup_table(&record)?;
        let parts = self.restricted_constituents(&record, chi)?;
        let phi = parts[0].0;
        let pos_phi = (ht
            .cd()
            .binary_search(&ht.degree(phi))
            .expect("degree occurs in cd")
            + 1) as u32;
        if pos_phi < self.pos(chi) {
            return Err(Error::Inconsistent(
                "minimal constituent position is below pos(χ) for a non-PRT".into(),
            ));
        }
        let t = conjugation_orbit_size(&self.group, &record, ht.irreducible(phi));
        let divides = self.table.degree(chi).is_multiple_of(ht.degree(phi) * t);
        if !divides {
            return Err(Error::Inconsistent(format!(
                "φ(1)·t = {}·{} does not divide χ(1) = {}",
                ht.degree(phi),
                t,
                self.table.degree(chi)
            )));
        }
        Ok((phi, t))
    }

    /// The normal series D_0 = G ≥ D_1 = G′ ≥ … ≥ D_n = 1, where D_i is the
    /// intersection of the kernels of the irreducibles of position ≤ i.
    pub fn d_series(&self) -> Result<Vec<Arc<PermGroup>>> {
        let n = self.table.cd().len();
        let mut series = Vec::with_capacity(n + 1);
        let mut current: Vec<crate::perm::Permutation> = self.group.elements().to_vec();
        series.push(self.group.clone());
        for i in 1..=n {
            for row in 0..self.table.len() {
                if self.pos(row) as usize == i {
                    let ker = kernel(self.table.irreducible(row))?;
                    current.retain(|p| ker.contains(p));
                }
            }
            let term = PermGroup::from_closed_elements(
                self.group.degree(),
                crate::group::minimal_gens(&current),
                current.clone(),
            );
            series.push(term);
        }
        Ok(series)
    }
}

/// Taketa test for a row of an arbitrary group's table.
pub fn is_taketa_row(
    group: &Arc<PermGroup>,
    table: &CharacterTable,
    row: usize,
) -> Result<bool> {
    let pos = table
        .cd()
        .binary_search(&table.degree(row))
        .expect("degree occurs in cd")
        + 1;
    let term = group.derived_term(pos);
    let ker = kernel(table.irreducible(row))?;
    Ok(term.elements().iter().all(|p| ker.contains(p)))
}

/// Orbit size of a class function of a normal subgroup under the conjugation
/// action of the parent (the index of its stabilizer).
fn conjugation_orbit_size(
    parent: &Arc<PermGroup>,
    record: &SubgroupRecord,
    phi: &ClassFunction,
) -> u64 {
    let sub = &record.subgroup;
    let sct = sub.class_table();
    // per-generator class permutation: class c ↦ class of g⁻¹·rep_c·g
    let perms: Vec<Vec<usize>> = parent
        .generators()
        .iter()
        .map(|g| {
            (0..sct.len())
                .map(|c| {
                    let moved = sct.class(c).representative.conjugated_by(g);
                    let idx = sub
                        .element_index(&moved)
                        .expect("normal subgroup is closed under conjugation");
                    sct.class_of_index(idx)
                })
                .collect()
        })
        .collect();
    let start: Vec<String> = phi.values().iter().map(|v| v.serialize()).collect();
    let mut orbit = std::collections::BTreeSet::new();
    orbit.insert(start.clone());
    let mut frontier = vec![start];
    while let Some(values) = frontier.pop() {
        for perm in &perms {
            // (g·φ)(x) = φ(g⁻¹ x g): value at class c comes from class perm[c]
            let moved: Vec<String> = (0..values.len()).map(|c| values[perm[c]].clone()).collect();
            if orbit.insert(moved.clone()) {
                frontier.push(moved);
            }
        }
    }
    orbit.len() as u64
}

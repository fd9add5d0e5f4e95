//! Finite permutation groups with full element enumeration.
//!
//! Groups are immutable after construction; conjugacy data and the derived
//! series are computed lazily behind `OnceLock` so shared references stay
//! cheap. All element lists are sorted lexicographically by image table,
//! which fixes a total order used for canonical keys and reproducible output.

use std::sync::{Arc, OnceLock};

use crate::classes::ClassTable;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the number of elements enumerated for one group.
pub const DEFAULT_ELEMENT_CAP: usize = 5000;

/// Default cap on the order of a group whose subgroup lattice may be listed.
pub const DEFAULT_SUBGROUP_ORDER_CAP: usize = 1000;

pub struct PermGroup {
    degree: usize,
    name: Option<String>,
    generators: Vec<Permutation>,
    /// All elements, sorted; the identity is always first.
    elements: Vec<Permutation>,
    classes: OnceLock<ClassTable>,
    derived: OnceLock<Arc<PermGroup>>,
}

impl PermGroup {
    /// Enumerates the closure of `gens` inside the symmetric group of the
    /// given degree, using the default element cap.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Arc<Self>> {
        Self::from_generators_capped(degree, gens, DEFAULT_ELEMENT_CAP)
    }

    pub fn from_generators_capped(
        degree: usize,
        gens: Vec<Permutation>,
        cap: usize,
    ) -> Result<Arc<Self>> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::MalformedPermutation(format!(
                    "generator {g} has degree {} instead of {degree}",
                    g.degree()
                )));
            }
        }
        let elements = closure(degree, &gens, cap)?;
        Ok(Arc::new(PermGroup {
            degree,
            name: None,
            generators: gens,
            elements,
            classes: OnceLock::new(),
            derived: OnceLock::new(),
        }))
    }

    /// Wraps an element list that is already known to be closed under the
    /// group operations. The list is re-closed in debug builds.
    pub(crate) fn from_closed_elements(
        degree: usize,
        gens: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> Arc<Self> {
        elements.sort_unstable();
        elements.dedup();
        debug_assert!(
            closure(degree, &elements, elements.len()).is_ok_and(|c| c == elements),
            "element list is not closed"
        );
        Arc::new(PermGroup {
            degree,
            name: None,
            generators: gens,
            elements,
            classes: OnceLock::new(),
            derived: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Arc<Self> {
        let deg = degree.max(1);
        PermGroup::from_closed_elements(deg, Vec::new(), vec![Permutation::identity(deg)])
    }

    pub fn with_name(self: &Arc<Self>, name: &str) -> Arc<Self> {
        Arc::new(PermGroup {
            degree: self.degree,
            name: Some(name.to_string()),
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            classes: OnceLock::new(),
            derived: OnceLock::new(),
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Index of an element in the sorted element list.
    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.element_index(p).is_some()
    }

    /// True when every element of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.order() <= self.order() && other.elements.iter().all(|p| self.contains(p))
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.elements == other.elements
    }

    /// Conjugacy class data, computed on first use.
    pub fn class_table(&self) -> &ClassTable {
        self.classes.get_or_init(|| ClassTable::compute(self))
    }

    pub fn exponent(&self) -> u64 {
        self.class_table().exponent()
    }

    /// |C_G(g)| = |G| / |class of g|.
    pub fn centralizer_order(&self, g: &Permutation) -> Result<usize> {
        let idx = self.element_index(g).ok_or(Error::ElementNotInGroup)?;
        let ct = self.class_table();
        Ok(self.order() / ct.class_size(ct.class_of_index(idx)))
    }

    /// Normal closure of all commutators of generator pairs.
    pub fn derived_subgroup(self: &Arc<Self>) -> Arc<PermGroup> {
        self.derived
            .get_or_init(|| {
                let mut gens: Vec<Permutation> = Vec::new();
                for a in &self.generators {
                    for b in &self.generators {
                        let c = a.commutator(b);
                        if !c.is_identity() {
                            gens.push(c);
                        }
                    }
                }
                gens.sort_unstable();
                gens.dedup();
                let closure = self.normal_closure(&gens);
                PermGroup::from_closed_elements(self.degree, minimal_gens(&closure), closure)
            })
            .clone()
    }

    /// Elements of the smallest normal subgroup of `self` containing `seed`.
    pub fn normal_closure(&self, seed: &[Permutation]) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = seed.to_vec();
        loop {
            let elements = closure(self.degree, &gens, self.order())
                .expect("normal closure cannot exceed the group order");
            let mut grew = false;
            'outer: for h in &elements {
                if h.is_identity() {
                    continue;
                }
                for g in &self.generators {
                    let c = h.conjugated_by(g);
                    if elements.binary_search(&c).is_err() {
                        gens.push(c);
                        grew = true;
                        break 'outer;
                    }
                }
            }
            if !grew {
                return elements;
            }
        }
    }

    /// Derived series `G ⊵ G′ ⊵ G″ ⊵ …`, ending at the first repeated term.
    pub fn derived_series(self: &Arc<Self>) -> Vec<Arc<PermGroup>> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            series.push(next);
            if series.last().unwrap().order() == 1 {
                break;
            }
        }
        series
    }

    /// The i-th derived subgroup; indices past stabilisation repeat the
    /// final term.
    pub fn derived_term(self: &Arc<Self>, i: usize) -> Arc<PermGroup> {
        let series = self.derived_series();
        series[i.min(series.len() - 1)].clone()
    }

    /// Derived length, `None` when the series stabilises above the identity.
    pub fn derived_length(self: &Arc<Self>) -> Option<usize> {
        let series = self.derived_series();
        if series.last().unwrap().order() == 1 {
            Some(series.len() - 1)
        } else {
            None
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn is_solvable(self: &Arc<Self>) -> bool {
        self.derived_length().is_some()
    }

    pub fn is_perfect(self: &Arc<Self>) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Lower central series `γ₁ = G, γ_{i+1} = [γ_i, G]` down to stabilisation.
    pub fn lower_central_series(self: &Arc<Self>) -> Vec<Vec<Permutation>> {
        let mut series: Vec<Vec<Permutation>> = vec![self.elements.clone()];
        loop {
            let last = series.last().unwrap();
            let mut seed: Vec<Permutation> = Vec::new();
            for h in last {
                for g in &self.generators {
                    let c = h.commutator(g);
                    if !c.is_identity() {
                        seed.push(c);
                    }
                }
            }
            seed.sort_unstable();
            seed.dedup();
            let next = self.normal_closure(&seed);
            if next.len() == last.len() {
                break;
            }
            let done = next.len() == 1;
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn is_nilpotent(self: &Arc<Self>) -> bool {
        self.lower_central_series().last().unwrap().len() == 1
    }

    /// All structural flags at once.
    pub fn structural_predicates(self: &Arc<Self>) -> StructuralFlags {
        StructuralFlags {
            abelian: self.is_abelian(),
            nilpotent: self.is_nilpotent(),
            supersolvable: crate::subgroups::is_supersolvable(self),
            solvable: self.is_solvable(),
            perfect: self.is_perfect(),
        }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}{})",
            self.degree,
            self.order(),
            self.name.as_deref().map(|n| format!(", {n}")).unwrap_or_default()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct StructuralFlags {
    pub abelian: bool,
    pub nilpotent: bool,
    pub supersolvable: bool,
    pub solvable: bool,
    pub perfect: bool,
}

/// Breadth-first closure of a generating set; the result is sorted.
fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut elements = std::collections::BTreeSet::new();
    elements.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.compose(g);
            if !elements.contains(&q) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                elements.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    Ok(elements.into_iter().collect())
}

/// Greedy small generating set for a closed element list: repeatedly adjoin
/// the smallest element outside the current closure.
pub(crate) fn minimal_gens(elements: &[Permutation]) -> Vec<Permutation> {
    if elements.len() <= 1 {
        return Vec::new();
    }
    let degree = elements[0].degree();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut generated = vec![Permutation::identity(degree)];
    while generated.len() < elements.len() {
        let next = elements
            .iter()
            .find(|p| generated.binary_search(p).is_err())
            .expect("closure is a subset of the element list")
            .clone();
        gens.push(next);
        generated = closure(degree, &gens, elements.len()).expect("subset closure fits");
    }
    gens
}

//! Subgroup enumeration and subgroup embedding data.
//!
//! The lattice is produced by the cyclic extension method: starting from the
//! trivial subgroup, every known subgroup H is extended by elements of its
//! normalizer whose relative order mod H is prime. This reaches every
//! solvable subgroup. For a non-solvable parent the enumeration falls back
//! to joining cyclic subgroups pairwise until closure, which is complete for
//! any parent at the cost of more closure computations.
//!
//! Subgroups are identified by their canonical key: the sorted list of
//! element indices into the parent's element list.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{minimal_gens, PermGroup, DEFAULT_SUBGROUP_ORDER_CAP};
use crate::perm::Permutation;

/// A subgroup together with its embedding into a fixed parent group.
pub struct SubgroupRecord {
    pub subgroup: Arc<PermGroup>,
    pub parent: Arc<PermGroup>,
    /// Sorted element indices into the parent; the canonical key.
    pub member_indices: Vec<u32>,
    /// Subgroup class index → parent class index.
    pub fusion: Vec<usize>,
    pub is_normal: bool,
}

impl SubgroupRecord {
    /// Builds the embedding record, verifying elementwise containment.
    pub fn new(parent: Arc<PermGroup>, subgroup: Arc<PermGroup>) -> Result<SubgroupRecord> {
        let mut member_indices = Vec::with_capacity(subgroup.order());
        for p in subgroup.elements() {
            match parent.element_index(p) {
                Some(i) => member_indices.push(i as u32),
                None => return Err(Error::NotContained),
            }
        }
        member_indices.sort_unstable();
        let fusion = compute_fusion(&parent, &subgroup)?;
        let is_normal = subgroup_is_normal(&parent, &subgroup);
        Ok(SubgroupRecord {
            subgroup,
            parent,
            member_indices,
            fusion,
            is_normal,
        })
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.subgroup.order()
    }

    pub fn is_proper(&self) -> bool {
        self.subgroup.order() < self.parent.order()
    }

    /// True when this subgroup contains every element of `other`.
    pub fn contains_record(&self, other: &SubgroupRecord) -> bool {
        is_sorted_subset(&other.member_indices, &self.member_indices)
    }
}

impl std::fmt::Debug for SubgroupRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubgroupRecord(order {} in order {}{})",
            self.subgroup.order(),
            self.parent.order(),
            if self.is_normal { ", normal" } else { "" }
        )
    }
}

fn is_sorted_subset(small: &[u32], large: &[u32]) -> bool {
    let mut it = large.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Less => {}
            }
        }
        return false;
    }
    true
}

/// Class fusion: parent class containing each subgroup class.
fn compute_fusion(parent: &Arc<PermGroup>, subgroup: &Arc<PermGroup>) -> Result<Vec<usize>> {
    let pct = parent.class_table();
    let sct = subgroup.class_table();
    sct.classes()
        .iter()
        .map(|c| {
            let idx = parent
                .element_index(&c.representative)
                .ok_or(Error::NotContained)?;
            Ok(pct.class_of_index(idx))
        })
        .collect()
}

fn subgroup_is_normal(parent: &PermGroup, subgroup: &PermGroup) -> bool {
    subgroup.generators().iter().all(|h| {
        parent
            .generators()
            .iter()
            .all(|g| subgroup.contains(&h.conjugated_by(g)))
    })
}

/// Internal node during lattice enumeration.
struct Node {
    members: Vec<u32>,
    gens: Vec<Permutation>,
}

/// Every subgroup of `parent`, sorted by order then canonical key.
pub fn all_subgroups(parent: &Arc<PermGroup>) -> Result<Vec<SubgroupRecord>> {
    all_subgroups_capped(parent, DEFAULT_SUBGROUP_ORDER_CAP)
}

pub fn all_subgroups_capped(
    parent: &Arc<PermGroup>,
    cap: usize,
) -> Result<Vec<SubgroupRecord>> {
    if parent.order() > cap {
        return Err(Error::SubgroupCapExceeded {
            order: parent.order(),
            cap,
        });
    }
    let keys = if parent.is_solvable() {
        enumerate_cyclic_extension(parent)
    } else {
        enumerate_join_closure(parent)
    };
    let mut records = Vec::with_capacity(keys.len());
    for (members, gens) in keys {
        let elements: Vec<Permutation> = members
            .iter()
            .map(|&i| parent.elements()[i as usize].clone())
            .collect();
        let gens = if gens.is_empty() && elements.len() > 1 {
            minimal_gens(&elements)
        } else {
            gens
        };
        let sub = PermGroup::from_closed_elements(parent.degree(), gens, elements);
        records.push(SubgroupRecord::new(parent.clone(), sub)?);
    }
    records.sort_by(|a, b| {
        (a.order(), &a.member_indices).cmp(&(b.order(), &b.member_indices))
    });
    Ok(records)
}

/// Cyclic extension enumeration; complete for solvable parents.
fn enumerate_cyclic_extension(parent: &Arc<PermGroup>) -> Vec<(Vec<u32>, Vec<Permutation>)> {
    let id_idx = parent
        .element_index(&parent.identity())
        .expect("identity is a member") as u32;
    let mut found: BTreeMap<Vec<u32>, Vec<Permutation>> = BTreeMap::new();
    found.insert(vec![id_idx], Vec::new());
    let mut worklist: Vec<Node> = vec![Node {
        members: vec![id_idx],
        gens: Vec::new(),
    }];
    while let Some(node) = worklist.pop() {
        let member_set: BTreeSet<u32> = node.members.iter().copied().collect();
        for gi in normalizer_indices(parent, &node) {
            if member_set.contains(&gi) {
                continue;
            }
            let g = &parent.elements()[gi as usize];
            let m = relative_order(parent, &member_set, g);
            if !crate::modular::is_prime(m) {
                continue;
            }
            // U = H ∪ Hg ∪ … ∪ Hg^{m-1}; H is normal in U so this is ⟨H, g⟩.
            let mut members: Vec<u32> = Vec::with_capacity(node.members.len() * m as usize);
            let mut coset_rep = Permutation::identity(parent.degree());
            for _ in 0..m {
                for &hi in &node.members {
                    let prod = parent.elements()[hi as usize].compose(&coset_rep);
                    members.push(parent.element_index(&prod).expect("product stays inside") as u32);
                }
                coset_rep = coset_rep.compose(g);
            }
            members.sort_unstable();
            members.dedup();
            debug_assert_eq!(members.len(), node.members.len() * m as usize);
            if !found.contains_key(&members) {
                let mut gens = node.gens.clone();
                gens.push(g.clone());
                found.insert(members.clone(), gens.clone());
                worklist.push(Node { members, gens });
            }
        }
    }
    found.into_iter().collect()
}

/// Joins of cyclic subgroups until closure; complete for any parent.
fn enumerate_join_closure(parent: &Arc<PermGroup>) -> Vec<(Vec<u32>, Vec<Permutation>)> {
    let id_idx = parent
        .element_index(&parent.identity())
        .expect("identity is a member") as u32;
    let mut found: BTreeMap<Vec<u32>, Vec<Permutation>> = BTreeMap::new();
    found.insert(vec![id_idx], Vec::new());
    let mut worklist: Vec<Node> = vec![Node {
        members: vec![id_idx],
        gens: Vec::new(),
    }];
    while let Some(node) = worklist.pop() {
        let member_set: BTreeSet<u32> = node.members.iter().copied().collect();
        for (gi, g) in parent.elements().iter().enumerate() {
            if member_set.contains(&(gi as u32)) {
                continue;
            }
            let mut gens = node.gens.clone();
            gens.push(g.clone());
            let members = close_indices(parent, &gens);
            if !found.contains_key(&members) {
                found.insert(members.clone(), gens.clone());
                worklist.push(Node { members, gens });
            }
        }
    }
    found.into_iter().collect()
}

/// Closure of a generating set, as sorted parent element indices.
fn close_indices(parent: &Arc<PermGroup>, gens: &[Permutation]) -> Vec<u32> {
    let id_idx = parent.element_index(&parent.identity()).unwrap() as u32;
    let mut seen = BTreeSet::new();
    seen.insert(id_idx);
    let mut frontier = vec![id_idx];
    while let Some(i) = frontier.pop() {
        for g in gens {
            let prod = parent.elements()[i as usize].compose(g);
            let j = parent.element_index(&prod).expect("closure stays inside") as u32;
            if seen.insert(j) {
                frontier.push(j);
            }
        }
    }
    seen.into_iter().collect()
}

/// Indices of the normalizer N_parent(H).
fn normalizer_indices(parent: &Arc<PermGroup>, node: &Node) -> Vec<u32> {
    let member_set: BTreeSet<u32> = node.members.iter().copied().collect();
    let gens: Vec<&Permutation> = if node.gens.is_empty() {
        Vec::new()
    } else {
        node.gens.iter().collect()
    };
    (0..parent.order() as u32)
        .filter(|&gi| {
            let g = &parent.elements()[gi as usize];
            gens.iter().all(|h| {
                let c = h.conjugated_by(g);
                let ci = parent.element_index(&c).expect("conjugate stays inside") as u32;
                member_set.contains(&ci)
            })
        })
        .collect()
}

/// Smallest m > 0 with g^m ∈ H.
fn relative_order(parent: &Arc<PermGroup>, members: &BTreeSet<u32>, g: &Permutation) -> u64 {
    let mut acc = g.clone();
    let mut m = 1;
    loop {
        let idx = parent.element_index(&acc).expect("power stays inside") as u32;
        if members.contains(&idx) {
            return m;
        }
        acc = acc.compose(g);
        m += 1;
    }
}

/// One representative per conjugacy class of subgroups; the representative
/// has the smallest canonical key in its orbit.
pub fn subgroups_up_to_conjugacy(parent: &Arc<PermGroup>) -> Result<Vec<SubgroupRecord>> {
    subgroups_up_to_conjugacy_capped(parent, DEFAULT_SUBGROUP_ORDER_CAP)
}

pub fn subgroups_up_to_conjugacy_capped(
    parent: &Arc<PermGroup>,
    cap: usize,
) -> Result<Vec<SubgroupRecord>> {
    let all = all_subgroups_capped(parent, cap)?;
    let key_index: BTreeMap<&Vec<u32>, usize> = all
        .iter()
        .enumerate()
        .map(|(i, r)| (&r.member_indices, i))
        .collect();
    let mut claimed = vec![false; all.len()];
    let mut reps = Vec::new();
    // Records are sorted by (order, key), so the first unclaimed record in
    // each orbit is the orbit's minimal key.
    for (i, record) in all.iter().enumerate() {
        if claimed[i] {
            continue;
        }
        let mut orbit = vec![record.member_indices.clone()];
        let mut seen: BTreeSet<Vec<u32>> = orbit.iter().cloned().collect();
        let mut frontier = orbit.clone();
        while let Some(key) = frontier.pop() {
            for g in parent.generators() {
                let conj = conjugate_key(parent, &key, g);
                if seen.insert(conj.clone()) {
                    orbit.push(conj.clone());
                    frontier.push(conj);
                }
            }
        }
        for key in &orbit {
            let j = key_index[key];
            claimed[j] = true;
        }
        reps.push(i);
    }
    let mut iter = all.into_iter().enumerate();
    let mut out = Vec::with_capacity(reps.len());
    let mut want = reps.into_iter().peekable();
    while let Some(&next) = want.peek() {
        let (i, r) = iter.next().expect("representative indices are in range");
        if i == next {
            out.push(r);
            want.next();
        }
    }
    Ok(out)
}

/// Conjugates a subgroup key elementwise.
pub fn conjugate_key(parent: &Arc<PermGroup>, key: &[u32], g: &Permutation) -> Vec<u32> {
    let mut out: Vec<u32> = key
        .iter()
        .map(|&i| {
            let c = parent.elements()[i as usize].conjugated_by(g);
            parent.element_index(&c).expect("conjugate stays inside") as u32
        })
        .collect();
    out.sort_unstable();
    out
}

/// Supersolvability: an ascending chain of subgroups, each normal in the
/// whole group, with cyclic factors. Nilpotent groups pass without a search.
pub fn is_supersolvable(group: &Arc<PermGroup>) -> bool {
    if group.is_abelian() || group.is_nilpotent() {
        return true;
    }
    if !group.is_solvable() {
        return false;
    }
    let normals = normal_subgroups(group);
    let full: Vec<u32> = (0..group.order() as u32).collect();
    let trivial_key = vec![group.element_index(&group.identity()).unwrap() as u32];
    let mut memo: BTreeMap<Vec<u32>, bool> = BTreeMap::new();
    chain_to_top(group, &normals, &trivial_key, &full, &mut memo)
}

/// Search for a chain N = … = G of G-normal subgroups with cyclic factors.
fn chain_to_top(
    group: &Arc<PermGroup>,
    normals: &[Vec<u32>],
    current: &Vec<u32>,
    full: &[u32],
    memo: &mut BTreeMap<Vec<u32>, bool>,
) -> bool {
    if current.len() == full.len() {
        return true;
    }
    if let Some(&r) = memo.get(current) {
        return r;
    }
    let mut ok = false;
    for cand in normals {
        if cand.len() <= current.len() || !is_sorted_subset(current, cand) {
            continue;
        }
        if cyclic_factor(group, current, cand) && chain_to_top(group, normals, cand, full, memo) {
            ok = true;
            break;
        }
    }
    memo.insert(current.clone(), ok);
    ok
}

/// Is M/N cyclic? Tested as: some m ∈ M with ⟨N, m⟩ = M.
fn cyclic_factor(group: &Arc<PermGroup>, n_key: &[u32], m_key: &[u32]) -> bool {
    let n_set: BTreeSet<u32> = n_key.iter().copied().collect();
    let n_gens: Vec<Permutation> = n_key
        .iter()
        .map(|&i| group.elements()[i as usize].clone())
        .collect();
    for &mi in m_key {
        if n_set.contains(&mi) {
            continue;
        }
        let mut gens = n_gens.clone();
        gens.push(group.elements()[mi as usize].clone());
        if close_indices(group, &gens).len() == m_key.len() {
            return true;
        }
    }
    false
}

/// Keys of all normal subgroups: join-closure of normal closures of the
/// cyclic subgroups. Every normal subgroup is a join of such closures.
fn normal_subgroups(group: &Arc<PermGroup>) -> Vec<Vec<u32>> {
    let mut seeds: BTreeSet<Vec<u32>> = BTreeSet::new();
    for g in group.elements() {
        let closure = group.normal_closure(std::slice::from_ref(g));
        seeds.insert(
            closure
                .iter()
                .map(|p| group.element_index(p).unwrap() as u32)
                .collect(),
        );
    }
    let mut found: BTreeSet<Vec<u32>> = seeds.clone();
    let seeds: Vec<Vec<u32>> = seeds.into_iter().collect();
    let mut worklist: Vec<Vec<u32>> = found.iter().cloned().collect();
    while let Some(key) = worklist.pop() {
        for seed in &seeds {
            if is_sorted_subset(seed, &key) {
                continue;
            }
            let gens: Vec<Permutation> = key
                .iter()
                .chain(seed.iter())
                .map(|&i| group.elements()[i as usize].clone())
                .collect();
            let joined = close_indices(group, &gens);
            if found.insert(joined.clone()) {
                worklist.push(joined);
            }
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn s(gens: &[&str], degree: usize) -> Arc<PermGroup> {
        let gens = gens
            .iter()
            .map(|t| Permutation::parse_cycles(t, degree).unwrap())
            .collect();
        PermGroup::from_generators(degree, gens).unwrap()
    }

    /// Complete oracle independent of the production path: joins of cyclic
    /// subgroups, regardless of solvability.
    fn oracle_keys(parent: &Arc<PermGroup>) -> BTreeSet<Vec<u32>> {
        enumerate_join_closure(parent)
            .into_iter()
            .map(|(k, _)| k)
            .collect()
    }

    #[test]
    fn s3_has_six_subgroups() {
        let g = s(&["(1 2)", "(1 2 3)"], 3);
        let subs = all_subgroups(&g).unwrap();
        assert_eq!(subs.len(), 6);
        let orders: Vec<usize> = subs.iter().map(|r| r.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        let production: BTreeSet<Vec<u32>> =
            subs.iter().map(|r| r.member_indices.clone()).collect();
        assert_eq!(production, oracle_keys(&g));
    }

    #[test]
    fn cyclic_prime_has_two_subgroups() {
        let g = corpus::cyclic(7).unwrap();
        assert_eq!(all_subgroups(&g).unwrap().len(), 2);
    }

    #[test]
    fn q8_has_six_subgroups() {
        let g = corpus::generalized_quaternion(8).unwrap();
        let subs = all_subgroups(&g).unwrap();
        let orders: Vec<usize> = subs.iter().map(|r| r.order()).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
        // every subgroup of Q8 is normal
        assert!(subs.iter().all(|r| r.is_normal));
    }

    #[test]
    fn s4_subgroup_classes() {
        let g = s(&["(1 2)", "(1 2 3 4)"], 4);
        let all = all_subgroups(&g).unwrap();
        assert_eq!(all.len(), 30);
        let classes = subgroups_up_to_conjugacy(&g).unwrap();
        assert_eq!(classes.len(), 11);
        let production: BTreeSet<Vec<u32>> =
            all.iter().map(|r| r.member_indices.clone()).collect();
        assert_eq!(production, oracle_keys(&g));
    }

    #[test]
    fn a5_lattice_is_complete() {
        let g = s(&["(1 2 3)", "(3 4 5)"], 5);
        let all = all_subgroups(&g).unwrap();
        // 1 + 15·C2 + 10·C3 + 5·V4 + 6·C5 + 10·S3 + 6·D10 + 5·A4 + A5
        assert_eq!(all.len(), 59);
        assert_eq!(subgroups_up_to_conjugacy(&g).unwrap().len(), 9);
    }

    #[test]
    fn abelian_group_conjugacy_is_trivial() {
        let g = corpus::cyclic(12).unwrap();
        let all = all_subgroups(&g).unwrap();
        let classes = subgroups_up_to_conjugacy(&g).unwrap();
        assert_eq!(all.len(), classes.len());
        assert_eq!(all.len(), 6); // one per divisor of 12
    }

    #[test]
    fn representatives_expand_to_full_list() {
        for g in [
            s(&["(1 2)", "(1 2 3 4)"], 4),
            corpus::generalized_quaternion(16).unwrap(),
            corpus::sl23().unwrap(),
            corpus::construct("direct_product(symmetric(4),cyclic(2))").unwrap(),
        ] {
            let all: BTreeSet<Vec<u32>> = all_subgroups(&g)
                .unwrap()
                .iter()
                .map(|r| r.member_indices.clone())
                .collect();
            let mut expanded: BTreeSet<Vec<u32>> = BTreeSet::new();
            for rep in subgroups_up_to_conjugacy(&g).unwrap() {
                let mut frontier = vec![rep.member_indices.clone()];
                expanded.insert(rep.member_indices.clone());
                while let Some(key) = frontier.pop() {
                    for gen in g.generators() {
                        let c = conjugate_key(&g, &key, gen);
                        if expanded.insert(c.clone()) {
                            frontier.push(c);
                        }
                    }
                }
            }
            assert_eq!(all, expanded);
        }
    }

    #[test]
    fn lattice_closed_under_intersection() {
        for g in [
            s(&["(1 2)", "(1 2 3 4)"], 4),
            corpus::sl23().unwrap(),
            corpus::dihedral(24).unwrap(),
        ] {
            let subs = all_subgroups(&g).unwrap();
            let keys: BTreeSet<Vec<u32>> =
                subs.iter().map(|r| r.member_indices.clone()).collect();
            for a in &subs {
                for b in &subs {
                    let inter: Vec<u32> = a
                        .member_indices
                        .iter()
                        .filter(|i| b.member_indices.binary_search(i).is_ok())
                        .copied()
                        .collect();
                    assert!(keys.contains(&inter), "intersection missing from lattice");
                }
            }
        }
    }

    #[test]
    fn fusion_commutes_with_power_maps() {
        let g = s(&["(1 2)", "(1 2 3 4)"], 4);
        for record in subgroups_up_to_conjugacy(&g).unwrap() {
            let sct = record.subgroup.class_table();
            let pct = g.class_table();
            for c in 0..sct.len() {
                for k in 0..=sct.exponent() {
                    let lhs = record.fusion[sct.power_class(c, k)];
                    let rhs = pct.power_class(record.fusion[c], k);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn fusion_examples_in_s3() {
        let g = s(&["(1 2)", "(1 2 3)"], 3);
        // A3 ≤ S3: both nontrivial classes of A3 fuse into the 3-cycle class.
        let a3 = g.derived_subgroup();
        let rec = SubgroupRecord::new(g.clone(), a3).unwrap();
        assert_eq!(rec.fusion.len(), 3);
        assert_eq!(rec.fusion[1], rec.fusion[2]);
        // identity fusion for H = G
        let full = SubgroupRecord::new(g.clone(), g.clone()).unwrap();
        assert_eq!(full.fusion, vec![0, 1, 2]);
        // C2 = ⟨(1 2)⟩: nonidentity class maps to the transposition class
        let c2 = PermGroup::from_generators(
            3,
            vec![Permutation::parse_cycles("(1 2)", 3).unwrap()],
        )
        .unwrap();
        let rec = SubgroupRecord::new(g.clone(), c2).unwrap();
        let pct = g.class_table();
        let transposition_class = pct
            .class_of_index(g.element_index(&Permutation::parse_cycles("(1 2)", 3).unwrap()).unwrap());
        assert_eq!(rec.fusion[1], transposition_class);
    }

    #[test]
    fn containment_violation_detected() {
        let g = s(&["(1 2 3)"], 3);
        let h = s(&["(1 2)"], 3);
        assert!(matches!(
            SubgroupRecord::new(g, h),
            Err(Error::NotContained)
        ));
    }

    #[test]
    fn cap_error_reported() {
        let g = corpus::symmetric(4).unwrap();
        assert!(matches!(
            all_subgroups_capped(&g, 10),
            Err(Error::SubgroupCapExceeded { order: 24, cap: 10 })
        ));
    }

    #[test]
    fn supersolvable_flags() {
        assert!(is_supersolvable(&corpus::dihedral(8).unwrap()));
        assert!(is_supersolvable(&corpus::dihedral(12).unwrap()));
        assert!(is_supersolvable(&corpus::frobenius21().unwrap()));
        assert!(!is_supersolvable(&corpus::symmetric(4).unwrap()));
        assert!(!is_supersolvable(&corpus::alternating(4).unwrap()));
        assert!(!is_supersolvable(&corpus::sl23().unwrap()));
        assert!(!is_supersolvable(&corpus::alternating(5).unwrap()));
    }
}

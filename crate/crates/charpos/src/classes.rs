//! Conjugacy classes, power maps, and class multiplication data.

use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug)]
pub struct ClassInfo {
    /// Lexicographically smallest member of the class.
    pub representative: Permutation,
    /// Indices into the group's sorted element list.
    pub members: Vec<usize>,
    pub element_order: u64,
}

/// Partition of a group into conjugacy classes.
///
/// Classes are sorted by (element order, class size, representative), which
/// makes class indices deterministic; the identity class is always index 0.
#[derive(Debug)]
pub struct ClassTable {
    classes: Vec<ClassInfo>,
    /// Class index of each element, indexed by element index.
    class_of: Vec<usize>,
    /// `power_classes[c][s]` = class of `rep_c^s`, for `s < order(rep_c)`.
    power_classes: Vec<Vec<usize>>,
    /// Class of the inverse of each class representative.
    inverse_class: Vec<usize>,
    exponent: u64,
}

impl ClassTable {
    pub(crate) fn compute(group: &PermGroup) -> ClassTable {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut raw: Vec<(u64, usize, usize, Vec<usize>)> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            // Orbit of the element under conjugation by the generators.
            let mut members = vec![start];
            class_of[start] = usize::MAX - 1; // visited marker
            let mut frontier = vec![start];
            while let Some(i) = frontier.pop() {
                for g in group.generators() {
                    let c = group.elements()[i].conjugated_by(g);
                    let j = group.element_index(&c).expect("closed under conjugation");
                    if class_of[j] == usize::MAX {
                        class_of[j] = usize::MAX - 1;
                        members.push(j);
                        frontier.push(j);
                    }
                }
            }
            members.sort_unstable();
            let order = group.elements()[members[0]].order();
            raw.push((order, members.len(), members[0], members));
        }
        raw.sort_by(|a, b| {
            (a.0, a.1, &group.elements()[a.2]).cmp(&(b.0, b.1, &group.elements()[b.2]))
        });

        let mut classes = Vec::with_capacity(raw.len());
        for (ci, (order, _size, min_idx, members)) in raw.into_iter().enumerate() {
            for &m in &members {
                class_of[m] = ci;
            }
            classes.push(ClassInfo {
                representative: group.elements()[min_idx].clone(),
                members,
                element_order: order,
            });
        }

        let exponent = classes
            .iter()
            .fold(1u64, |acc, c| num::integer::lcm(acc, c.element_order));

        let power_classes = classes
            .iter()
            .map(|c| {
                let mut row = Vec::with_capacity(c.element_order as usize);
                let mut p = Permutation::identity(group.degree());
                for _ in 0..c.element_order {
                    let idx = group.element_index(&p).expect("power stays in group");
                    row.push(class_of[idx]);
                    p = p.compose(&c.representative);
                }
                row
            })
            .collect::<Vec<_>>();

        let inverse_class = classes
            .iter()
            .map(|c| {
                let idx = group
                    .element_index(&c.representative.inverse())
                    .expect("inverse stays in group");
                class_of[idx]
            })
            .collect();

        ClassTable {
            classes,
            class_of,
            power_classes,
            inverse_class,
            exponent,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ClassInfo {
        &self.classes[i]
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.classes[i].members.len()
    }

    pub fn class_order(&self, i: usize) -> u64 {
        self.classes[i].element_order
    }

    /// Class index of the element with the given element index.
    pub fn class_of_index(&self, element_index: usize) -> usize {
        self.class_of[element_index]
    }

    /// Class of `rep_c^k` for arbitrary `k`.
    pub fn power_class(&self, c: usize, k: u64) -> usize {
        let o = self.classes[c].element_order;
        self.power_classes[c][(k % o) as usize]
    }

    /// The power map on all classes for a fixed exponent `k`.
    pub fn power_map(&self, k: u64) -> Vec<usize> {
        (0..self.len()).map(|c| self.power_class(c, k)).collect()
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;
    use std::sync::Arc;

    fn group(gens: &[&str], degree: usize) -> Arc<PermGroup> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree).unwrap())
            .collect();
        PermGroup::from_generators(degree, gens).unwrap()
    }

    /// Independent oracle: classes by conjugating with every group element.
    fn bruteforce_classes(g: &PermGroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; g.order()];
        let mut out = Vec::new();
        for i in 0..g.order() {
            if seen[i] {
                continue;
            }
            let mut class: Vec<usize> = g
                .elements()
                .iter()
                .map(|h| {
                    g.element_index(&g.elements()[i].conjugated_by(h))
                        .unwrap()
                })
                .collect();
            class.sort_unstable();
            class.dedup();
            for &j in &class {
                seen[j] = true;
            }
            out.push(class);
        }
        out.sort();
        out
    }

    #[test]
    fn s3_class_sizes() {
        let g = group(&["(1 2)", "(1 2 3)"], 3);
        let ct = g.class_table();
        let sizes: Vec<usize> = ct.classes().iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]); // sorted by element order: id, transpositions, 3-cycles
        let mut against: Vec<Vec<usize>> =
            ct.classes().iter().map(|c| c.members.clone()).collect();
        against.sort();
        assert_eq!(against, bruteforce_classes(&g));
    }

    #[test]
    fn trivial_group_single_class() {
        let g = PermGroup::trivial(1);
        assert_eq!(g.class_table().len(), 1);
        assert_eq!(g.class_table().exponent(), 1);
    }

    #[test]
    fn q8_class_sizes() {
        let g = crate::corpus::generalized_quaternion(8).unwrap();
        let ct = g.class_table();
        let sizes: Vec<usize> = ct.classes().iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        let mut against: Vec<Vec<usize>> =
            ct.classes().iter().map(|c| c.members.clone()).collect();
        against.sort();
        assert_eq!(against, bruteforce_classes(&g));
    }

    #[test]
    fn class_sizes_divide_group_order() {
        for g in [
            group(&["(1 2)", "(1 2 3)"], 3),
            group(&["(1 2 3 4)", "(1 3)"], 4),
            group(&["(1 2 3 4 5)", "(1 2 3)"], 5),
        ] {
            let ct = g.class_table();
            let total: usize = ct.classes().iter().map(|c| c.members.len()).sum();
            assert_eq!(total, g.order());
            for c in ct.classes() {
                assert_eq!(g.order() % c.members.len(), 0);
            }
        }
    }

    #[test]
    fn power_map_independent_of_representative() {
        let g = group(&["(1 2 3 4)", "(1 3)"], 4);
        let ct = g.class_table();
        for (ci, class) in ct.classes().iter().enumerate() {
            for k in 0..=ct.exponent() {
                let expected = ct.power_class(ci, k);
                for &m in &class.members {
                    let p = g.elements()[m].pow(k);
                    assert_eq!(ct.class_of_index(g.element_index(&p).unwrap()), expected);
                }
            }
        }
    }

    #[test]
    fn identity_class_is_first() {
        let g = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let ct = g.class_table();
        assert!(ct.class(0).representative.is_identity());
        assert_eq!(ct.class_size(0), 1);
    }
}

//! Permutations on the points `{1..n}`, stored 0-based internally.
//!
//! The textual format is disjoint cycle notation on 1-based points,
//! e.g. `(1 2 3)(4 5)`; the identity is written `()`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0..degree-1}` given by its image table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Identity permutation of the given degree.
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let i = img as usize;
            if i >= n {
                return Err(Error::MalformedPermutation(format!(
                    "image {} out of range for degree {n}",
                    img + 1
                )));
            }
            if seen[i] {
                return Err(Error::MalformedPermutation(format!(
                    "point {} appears twice as an image",
                    img + 1
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a point.
    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = other.images.iter().map(|&p| self.images[p as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Conjugate `self^g = g⁻¹ ∘ self ∘ g`.
    pub fn conjugated_by(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(&self.compose(g))
    }

    /// Commutator `[self, other] = self⁻¹ ∘ other⁻¹ ∘ self ∘ other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .compose(&other.inverse())
            .compose(&self.compose(other))
    }

    /// Multiplicative order, via cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num::integer::lcm(acc, c.len() as u64))
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each rotated to start at its smallest point and
    /// sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] || self.apply(start) == start {
                seen[start as usize] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Parses disjoint cycle notation, 1-based, e.g. `(1 2 3)(4 5)` or `()`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let bad = |msg: String| Error::MalformedPermutation(msg);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let text = text.trim();
        if text.is_empty() {
            return Err(bad("empty permutation text".into()));
        }
        let mut chars = text.chars().peekable();
        let mut any = false;
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(bad(format!("expected '(' but found '{c}'")));
            }
            chars.next();
            let mut body = String::new();
            let mut closed = false;
            for c in chars.by_ref() {
                if c == ')' {
                    closed = true;
                    break;
                }
                if c == '(' {
                    return Err(bad("nested '(' in cycle".into()));
                }
                body.push(c);
            }
            if !closed {
                return Err(bad("unbalanced '(' in cycle notation".into()));
            }
            any = true;
            let points: Vec<u32> = body
                .split([' ', ',', '\t'])
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| bad(format!("invalid point '{s}'")))
                })
                .collect::<Result<_>>()?;
            if points.is_empty() {
                continue; // "()" denotes the identity cycle
            }
            if points.len() == 1 {
                return Err(bad(format!("cycle of length 1: ({})", points[0])));
            }
            for &p in &points {
                if p == 0 || p as usize > degree {
                    return Err(bad(format!("point {p} out of range for degree {degree}")));
                }
                if used[(p - 1) as usize] {
                    return Err(bad(format!("point {p} appears in two cycles")));
                }
                used[(p - 1) as usize] = true;
            }
            for w in 0..points.len() {
                let from = points[w] - 1;
                let to = points[(w + 1) % points.len()] - 1;
                images[from as usize] = to;
            }
        }
        if !any {
            return Err(bad("no cycles found".into()));
        }
        Permutation::from_images(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Lexicographic order on image tables; ties broken by degree first so that
/// permutations of different degrees still order consistently.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        // (a ∘ b)(2) = a(b(2)) = a(3) = 3
        let ab = a.compose(&b);
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.images(), &[1, 2, 0]);
    }

    #[test]
    fn inverse_cancels() {
        let p = Permutation::parse_cycles("(1 2 3)(4 5)", 6).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn order_from_cycle_type() {
        let p = Permutation::parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn display_round_trip() {
        for text in ["(1 2 3)(4 5)", "(1 3)", "()"] {
            let p = Permutation::parse_cycles(text, 6).unwrap();
            let shown = p.to_string();
            let q = Permutation::parse_cycles(&shown, 6).unwrap();
            assert_eq!(p, q);
            assert_eq!(shown, q.to_string());
        }
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(Permutation::parse_cycles("(1 2", 4).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 4).is_err());
        assert!(Permutation::parse_cycles("(1 9)", 4).is_err());
        assert!(Permutation::parse_cycles("(0 1)", 4).is_err());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let g = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        let h = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let c = g.conjugated_by(&h);
        // (1 2 3)^(1 2) = (2 1 3) = (1 3 2)
        assert_eq!(c, Permutation::parse_cycles("(1 3 2)", 3).unwrap());
    }
}

//! Multidegree bookkeeping for intersections of hypersurfaces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exact_core::{binom_u, Natural};

/// The multiset of generator degrees `[d:l_d, ..., 1:l_1]`.
///
/// Zero multiplicities are never stored, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionType {
    counts: BTreeMap<u32, u64>,
}

impl IntersectionType {
    /// Builds a type from `(degree, multiplicity)` pairs; repeated degrees add up.
    pub fn new(pairs: &[(u32, u64)]) -> Self {
        let mut t = Self::default();
        for &(deg, mult) in pairs {
            t.add(deg, mult);
        }
        t
    }

    /// The type of a system with the listed generator degrees, e.g. `(1,2,3)`.
    pub fn from_degrees(degrees: &[u32]) -> Self {
        let mut t = Self::default();
        for &d in degrees {
            t.add(d, 1);
        }
        t
    }

    pub fn add(&mut self, degree: u32, mult: u64) {
        assert!(degree >= 1, "degrees start at 1");
        if mult > 0 {
            *self.counts.entry(degree).or_insert(0) += mult;
        }
    }

    pub fn count(&self, degree: u32) -> u64 {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Number of generators.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of generators of degree at least two.
    pub fn nonlinear(&self) -> u64 {
        self.counts.iter().filter(|(d, _)| **d >= 2).map(|(_, c)| c).sum()
    }

    /// Bezout number: the product of all generator degrees.
    pub fn degree_product(&self) -> Natural {
        let mut acc = Natural::one();
        for (&d, &c) in &self.counts {
            acc *= Natural::from(d).pow(c as u32);
        }
        acc
    }

    /// The same type with every generator of degree below `min_degree` dropped.
    pub fn at_least(&self, min_degree: u32) -> Self {
        Self {
            counts: self
                .counts
                .iter()
                .filter(|(d, _)| **d >= min_degree)
                .map(|(d, c)| (*d, *c))
                .collect(),
        }
    }

    /// `(degree, multiplicity)` pairs, highest degree first.
    pub fn pairs(&self) -> Vec<(u32, u64)> {
        self.counts.iter().rev().map(|(d, c)| (*d, *c)).collect()
    }
}

impl fmt::Display for IntersectionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(d, c)| format!("{d}:{c}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Type of the `k`-th polar cone of an intersection of type `t`.
///
/// One step sends `l_j` to `sum_{i >= j} l_i`: a degree-`i` generator
/// contributes one polar in every degree `1..=i`.
pub fn cone_type(t: &IntersectionType, k: u32) -> IntersectionType {
    let mut cur = t.clone();
    for _ in 0..k {
        let top = cur.max_degree();
        let mut next = IntersectionType::default();
        let mut running = 0u64;
        for j in (1..=top).rev() {
            running += cur.count(j);
            next.add(j, running);
        }
        cur = next;
    }
    cur
}

/// Closed form for the `k`-th cone type of an intersection of type `(1,...,d)`:
/// degree `j` appears `C(k+d-j, d-j)` times.
pub fn cone_type_chain(d: u32, k: u32) -> IntersectionType {
    let mut t = IntersectionType::default();
    for j in 1..=d {
        let c = binom_u(u64::from(k + d - j), u64::from(d - j));
        t.add(j, c.try_into().expect("multiplicity fits in u64"));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_examples() {
        assert_eq!(cone_type_chain(4, 2).to_string(), "[4:1, 3:3, 2:6, 1:10]");
        assert_eq!(cone_type_chain(3, 2).to_string(), "[3:1, 2:3, 1:6]");
        let with_hyperplane = IntersectionType::from_degrees(&[1, 1, 2, 3]);
        assert_eq!(cone_type(&with_hyperplane, 2).to_string(), "[3:1, 2:3, 1:7]");
        let base = IntersectionType::from_degrees(&[1, 2, 3]);
        assert_eq!(cone_type(&base, 0), base);
        assert_eq!(cone_type(&base, 1).to_string(), "[3:1, 2:2, 1:3]");
    }

    #[test]
    fn chain_matches_iteration() {
        for d in 1..=8u32 {
            let base = IntersectionType::from_degrees(&(1..=d).collect::<Vec<_>>());
            for k in 0..=10u32 {
                assert_eq!(cone_type(&base, k), cone_type_chain(d, k), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn bezout_and_filters() {
        let t = IntersectionType::new(&[(4, 1), (3, 2), (1, 5)]);
        assert_eq!(t.degree_product(), Natural::from(36u32));
        assert_eq!(t.at_least(3).to_string(), "[4:1, 3:2]");
        assert_eq!(t.total(), 8);
        assert_eq!(t.nonlinear(), 3);
    }
}

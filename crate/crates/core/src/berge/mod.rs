//! Berge-tree isomorphism types: canonical codes, automorphism and labelled
//! counts, exhaustive enumeration, and marked trees.

mod canon;
mod marked;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

pub use canon::{
    automorphism_count, automorphism_count_marked, canonical_code, canonical_code_marked, canonize, CanonicalCode,
};
pub use marked::{count_marked_copies, enumerate_marked_types, is_minimal, MarkedBergeTreeType};

use crate::error::{Error, Result};
use crate::math::factorial;
use crate::Hypergraph;

/// Caps on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Largest admissible vertex count `1 + l·d`.
    pub max_vertices: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_vertices: 16 }
    }
}

impl EnumerationLimits {
    fn check(&self, d: usize, l: usize) -> Result<usize> {
        let v = l.checked_mul(d).and_then(|x| x.checked_add(1)).ok_or(Error::Overflow("vertex count"))?;
        if v > self.max_vertices {
            return Err(Error::LimitExceeded { what: "Berge-tree vertex count", limit: self.max_vertices as u128 });
        }
        Ok(v)
    }
}

/// One isomorphism class of Berge-trees of a given order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergeTreeType {
    pub d: usize,
    pub order: usize,
    pub code: CanonicalCode,
    /// `|Aut(T)|`.
    pub automorphisms: u128,
    /// A representative on vertices `0..1 + order·d`.
    pub representative: Hypergraph,
}

impl BergeTreeType {
    pub fn from_tree(t: &Hypergraph) -> Result<Self> {
        let (code, automorphisms) = canonize(t, None)?;
        Ok(BergeTreeType { d: t.d(), order: t.edge_count(), code, automorphisms, representative: t.clone() })
    }

    pub fn vertices(&self) -> usize {
        1 + self.order * self.d
    }

    /// Number of labelled copies on `v` labelled vertices, `v! / |Aut|`.
    pub fn labelled_count(&self) -> u128 {
        let v = self.vertices() as u64;
        factorial(v).expect("vertex counts are bounded by the enumeration limit") / self.automorphisms
    }
}

/// Grows every Berge-tree of order `l` by attaching one edge with `d` fresh
/// vertices at an existing vertex, deduplicating by canonical code.
///
/// Types come back sorted by code.
pub fn enumerate_tree_types(d: usize, l: usize) -> Result<Vec<BergeTreeType>> {
    enumerate_tree_types_with(d, l, EnumerationLimits::default())
}

pub fn enumerate_tree_types_with(d: usize, l: usize, limits: EnumerationLimits) -> Result<Vec<BergeTreeType>> {
    if d == 0 {
        return Err(Error::InvalidUniformity(d));
    }
    limits.check(d, l)?;
    let mut level: BTreeMap<CanonicalCode, (Hypergraph, u128)> = BTreeMap::new();
    let seed = Hypergraph::empty(1, d)?;
    let (code, aut) = canonize(&seed, None)?;
    level.insert(code, (seed, aut));
    for _ in 0..l {
        let mut next = BTreeMap::new();
        for (t, _) in level.values() {
            for v in 0..t.n() as u32 {
                let grown = attach_edge(t, v);
                let (code, aut) = canonize(&grown, None)?;
                next.entry(code).or_insert((grown, aut));
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|(code, (representative, automorphisms))| BergeTreeType { d, order: l, code, automorphisms, representative })
        .collect())
}

/// `t` plus a new edge `{v, n, n+1, ..., n+d-1}`.
pub(crate) fn attach_edge(t: &Hypergraph, v: u32) -> Hypergraph {
    let n = t.n() as u32;
    let d = t.d();
    let mut edges: Vec<Vec<u32>> = t.edges().map(|e| e.to_vec()).collect();
    let mut fresh = alloc::vec![v];
    fresh.extend(n..n + d as u32);
    edges.push(fresh);
    Hypergraph::from_edges_unchecked(t.n() + d, d, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_tree_counts() {
        let counts: Vec<usize> = (1..=6).map(|l| enumerate_tree_types(1, l).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 6, 11]);
    }

    #[test]
    fn hypergraph_tree_counts() {
        assert_eq!(enumerate_tree_types(2, 1).unwrap().len(), 1);
        assert_eq!(enumerate_tree_types(2, 2).unwrap().len(), 1);
        assert_eq!(enumerate_tree_types(2, 0).unwrap().len(), 1);
    }

    #[test]
    fn labelled_counts() {
        let t = &enumerate_tree_types(1, 1).unwrap()[0];
        assert_eq!(t.labelled_count(), 1);
        let t = &enumerate_tree_types(2, 2).unwrap()[0];
        assert_eq!(t.automorphisms, 8);
        assert_eq!(t.labelled_count(), 15);
        for l in 1..=6u32 {
            let total: u128 = enumerate_tree_types(1, l as usize).unwrap().iter().map(|t| t.labelled_count()).sum();
            assert_eq!(total, u128::from(l + 1).pow(l - 1));
        }
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(enumerate_tree_types(1, 16), Err(Error::LimitExceeded { .. })));
        let tight = EnumerationLimits { max_vertices: 4 };
        assert!(enumerate_tree_types_with(1, 3, tight).is_ok());
        assert!(enumerate_tree_types_with(1, 4, tight).is_err());
    }

    #[test]
    fn sorted_and_unique() {
        let types = enumerate_tree_types(1, 6).unwrap();
        assert!(types.windows(2).all(|w| w[0].code < w[1].code));
    }
}

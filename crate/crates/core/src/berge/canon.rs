//! AHU canonization of Berge-trees through their incidence trees.
//!
//! The incidence graph of a Berge-tree is an ordinary tree whose nodes are
//! coloured "vertex" or "edge". Rooting it at its center (or the smaller of
//! the two codes when there are two centers) gives a code that is equal for
//! two Berge-trees exactly when they are isomorphic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::Hypergraph;

const VERTEX: u8 = b'v';
const MARKED: u8 = b'm';
const EDGE: u8 = b'e';
const OPEN: u8 = b'(';
const CLOSE: u8 = b')';

/// Isomorphism-complete code of a (possibly marked) Berge-tree.
///
/// The byte alphabet is printable ASCII, so codes double as report keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        core::str::from_utf8(&self.0).expect("canonical codes are ASCII")
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Incidence tree of a Berge-tree: nodes `0..n` are vertices, `n..n+m` edges.
struct IncidenceTree {
    adj: Vec<Vec<u32>>,
    tag: Vec<u8>,
}

impl IncidenceTree {
    fn new(t: &Hypergraph, marks: Option<&[bool]>) -> Result<Self> {
        let n = t.n();
        let m = t.edge_count();
        if n == 0 || n != 1 + m * t.d() {
            return Err(Error::NotATree);
        }
        let mut adj = vec![Vec::new(); n + m];
        for (e, edge) in t.edges().enumerate() {
            for &v in edge {
                adj[v as usize].push((n + e) as u32);
                adj[n + e].push(v);
            }
        }
        let mut tag = vec![VERTEX; n + m];
        if let Some(marks) = marks {
            for (v, &marked) in marks.iter().enumerate().take(n) {
                if marked {
                    tag[v] = MARKED;
                }
            }
        }
        for t in tag.iter_mut().skip(n) {
            *t = EDGE;
        }
        let tree = IncidenceTree { adj, tag };
        // n = 1 + md together with connectivity forces acyclicity
        if tree.bfs(0).0.len() != n + m {
            return Err(Error::NotATree);
        }
        Ok(tree)
    }

    /// Breadth-first order and parent array from `root`.
    fn bfs(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.adj.len()];
        let mut order = vec![root];
        parent[root] = root;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &self.adj[x] {
                let y = y as usize;
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    order.push(y);
                }
            }
        }
        (order, parent)
    }

    /// One or two central nodes, found by peeling leaves.
    fn centers(&self) -> Vec<usize> {
        let total = self.adj.len();
        if total == 1 {
            return vec![0];
        }
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..total).filter(|&x| deg[x] == 1).collect();
        let mut remaining = total;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &x in &layer {
                for &y in &self.adj[x] {
                    let y = y as usize;
                    if deg[y] > 1 {
                        deg[y] -= 1;
                        if deg[y] == 1 {
                            next.push(y);
                        }
                    }
                }
                deg[x] = 0;
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    /// Rooted AHU code together with the rooted automorphism count.
    fn rooted(&self, root: usize) -> Result<(Vec<u8>, u128)> {
        let (order, parent) = self.bfs(root);
        let mut codes: Vec<Vec<u8>> = vec![Vec::new(); self.adj.len()];
        let mut aut: Vec<u128> = vec![1; self.adj.len()];
        for &x in order.iter().rev() {
            // parent[root] == root never appears in the adjacency list
            let mut children: Vec<usize> = self.adj[x].iter().map(|&y| y as usize).filter(|&y| y != parent[x]).collect();
            children.sort_by(|&a, &b| codes[a].cmp(&codes[b]));
            let mut code = vec![self.tag[x], OPEN];
            let mut a: u128 = 1;
            let mut run = 0u128;
            for (i, &c) in children.iter().enumerate() {
                code.extend_from_slice(&codes[c]);
                a = a.checked_mul(aut[c]).ok_or(Error::Overflow("automorphism count"))?;
                run = if i > 0 && codes[children[i - 1]] == codes[c] { run + 1 } else { 1 };
                a = a.checked_mul(run).ok_or(Error::Overflow("automorphism count"))?;
            }
            code.push(CLOSE);
            for &c in &children {
                codes[c] = Vec::new();
            }
            codes[x] = code;
            aut[x] = a;
        }
        Ok((core::mem::take(&mut codes[root]), aut[root]))
    }

    fn canonical(&self) -> Result<(CanonicalCode, u128)> {
        let mut best: Option<(Vec<u8>, u128)> = None;
        for c in self.centers() {
            let (code, aut) = self.rooted(c)?;
            // two centers are adjacent, hence of different colours, and every
            // automorphism fixes both; either rooting gives the same count
            if best.as_ref().map_or(true, |(b, _)| code < *b) {
                best = Some((code, aut));
            }
        }
        let (code, aut) = best.expect("a tree has at least one center");
        Ok((CanonicalCode(code), aut))
    }
}

/// Canonical code of a Berge-tree; rejects anything that is not one.
pub fn canonical_code(t: &Hypergraph) -> Result<CanonicalCode> {
    Ok(IncidenceTree::new(t, None)?.canonical()?.0)
}

/// Canonical code where marked vertices carry their own colour.
pub fn canonical_code_marked(t: &Hypergraph, marks: &[bool]) -> Result<CanonicalCode> {
    Ok(IncidenceTree::new(t, Some(marks))?.canonical()?.0)
}

/// Number of vertex permutations preserving the edge set.
pub fn automorphism_count(t: &Hypergraph) -> Result<u128> {
    Ok(IncidenceTree::new(t, None)?.canonical()?.1)
}

/// Number of automorphisms that also map marked vertices to marked vertices.
pub fn automorphism_count_marked(t: &Hypergraph, marks: &[bool]) -> Result<u128> {
    Ok(IncidenceTree::new(t, Some(marks))?.canonical()?.1)
}

/// Code and automorphism count in one pass.
pub fn canonize(t: &Hypergraph, marks: Option<&[bool]>) -> Result<(CanonicalCode, u128)> {
    IncidenceTree::new(t, marks)?.canonical()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[[u32; 2]]) -> Hypergraph {
        Hypergraph::build(n, 1, edges).unwrap()
    }

    #[test]
    fn path_and_star_differ() {
        let p4 = g(4, &[[0, 1], [1, 2], [2, 3]]);
        let star = g(4, &[[0, 1], [0, 2], [0, 3]]);
        assert_ne!(canonical_code(&p4).unwrap(), canonical_code(&star).unwrap());
        let p4b = g(4, &[[3, 1], [1, 0], [0, 2]]);
        assert_eq!(canonical_code(&p4).unwrap(), canonical_code(&p4b).unwrap());
    }

    #[test]
    fn automorphisms_small() {
        assert_eq!(automorphism_count(&g(2, &[[0, 1]])).unwrap(), 2);
        assert_eq!(automorphism_count(&Hypergraph::build(3, 2, [[0, 1, 2]]).unwrap()).unwrap(), 6);
        let two = Hypergraph::build(5, 2, [[0, 1, 2], [2, 3, 4]]).unwrap();
        assert_eq!(automorphism_count(&two).unwrap(), 8);
        assert_eq!(automorphism_count(&g(4, &[[0, 1], [1, 2], [2, 3]])).unwrap(), 2);
        assert_eq!(automorphism_count(&g(4, &[[0, 1], [0, 2], [0, 3]])).unwrap(), 6);
        assert_eq!(automorphism_count(&Hypergraph::empty(1, 1).unwrap()).unwrap(), 1);
    }

    #[test]
    fn marked_codes() {
        let p3 = g(3, &[[0, 1], [1, 2]]);
        let end = canonical_code_marked(&p3, &[true, false, false]).unwrap();
        let other_end = canonical_code_marked(&p3, &[false, false, true]).unwrap();
        let center = canonical_code_marked(&p3, &[false, true, false]).unwrap();
        assert_eq!(end, other_end);
        assert_ne!(end, center);
        assert_eq!(automorphism_count_marked(&p3, &[true, false, false]).unwrap(), 1);
        assert_eq!(automorphism_count_marked(&p3, &[false, true, false]).unwrap(), 2);
    }

    #[test]
    fn rejects_non_trees() {
        let tri = g(3, &[[0, 1], [1, 2], [0, 2]]);
        assert_eq!(canonical_code(&tri), Err(Error::NotATree));
        assert_eq!(canonical_code(&g(4, &[[0, 1], [2, 3]])), Err(Error::NotATree));
    }
}

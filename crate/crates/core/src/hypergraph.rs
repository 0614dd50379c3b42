//! Finite (d+1)-uniform hypergraphs on the dense vertex set `0..n`.
//!
//! Edges are stored sorted and deduplicated in one flat buffer together with
//! a vertex→edge incidence index, so a [`Hypergraph`] is immutable once built.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{EdgeDefect, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    d: usize,
    n: usize,
    /// Edge-major vertex buffer, `d + 1` entries per edge.
    verts: Vec<u32>,
    inc_start: Vec<u32>,
    inc: Vec<u32>,
}

/// A connected component together with its structural flags.
///
/// `edges` are indices into the parent hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<u32>,
    pub edges: Vec<u32>,
    pub berge_tree: bool,
    pub unicyclic: bool,
}

impl Component {
    pub fn order(&self) -> usize {
        self.edges.len()
    }
}

/// The radius-r ball around a vertex, relabelled so that the root is `0`
/// and vertices appear in breadth-first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub graph: Hypergraph,
    /// Host vertex of every local vertex.
    pub origin: Vec<u32>,
    /// Edge-hop distance of every local vertex from the root.
    pub depth: Vec<u32>,
}

impl Ball {
    pub fn root(&self) -> u32 {
        0
    }
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge and dropping duplicate edges.
    pub fn build<I, E>(n: usize, d: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u32]>,
    {
        if d == 0 {
            return Err(Error::InvalidUniformity(d));
        }
        let mut list: Vec<Vec<u32>> = Vec::new();
        for e in edges {
            let e = e.as_ref();
            let reject = |defect| Error::InvalidEdge { edge: e.to_vec(), defect };
            if e.len() != d + 1 {
                return Err(reject(EdgeDefect::WrongArity { expected: d + 1 }));
            }
            let mut s = e.to_vec();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(reject(EdgeDefect::RepeatedVertex));
            }
            if s[d] as usize >= n {
                return Err(reject(EdgeDefect::VertexOutOfRange { n }));
            }
            list.push(s);
        }
        list.sort_unstable();
        list.dedup();
        let verts = list.concat();
        Ok(Self::from_flat(n, d, verts))
    }

    pub fn empty(n: usize, d: usize) -> Result<Self> {
        Self::build(n, d, core::iter::empty::<[u32; 0]>())
    }

    /// `verts` must already hold sorted, lexicographically ordered, distinct edges.
    pub(crate) fn from_flat(n: usize, d: usize, verts: Vec<u32>) -> Self {
        debug_assert_eq!(verts.len() % (d + 1), 0);
        let m = verts.len() / (d + 1);
        let mut inc_start = vec![0u32; n + 1];
        for &v in &verts {
            inc_start[v as usize + 1] += 1;
        }
        for i in 0..n {
            inc_start[i + 1] += inc_start[i];
        }
        let mut fill = inc_start.clone();
        let mut inc = vec![0u32; verts.len()];
        for e in 0..m {
            for &v in &verts[e * (d + 1)..(e + 1) * (d + 1)] {
                inc[fill[v as usize] as usize] = e as u32;
                fill[v as usize] += 1;
            }
        }
        Hypergraph { d, n, verts, inc_start, inc }
    }

    /// Sorts and deduplicates raw edges that are known to be valid.
    pub(crate) fn from_edges_unchecked(n: usize, d: usize, mut edges: Vec<Vec<u32>>) -> Self {
        for e in &mut edges {
            e.sort_unstable();
        }
        edges.sort_unstable();
        edges.dedup();
        Self::from_flat(n, d, edges.concat())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.verts.len() / (self.d + 1)
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        let k = self.d + 1;
        &self.verts[i * k..(i + 1) * k]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.verts.chunks_exact(self.d + 1)
    }

    /// Indices of the edges containing `v`, in increasing order.
    pub fn incident(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.inc[self.inc_start[v] as usize..self.inc_start[v + 1] as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.incident(v).len()
    }

    /// Membership test for an edge given as a sorted vertex slice.
    pub fn has_edge(&self, sorted: &[u32]) -> bool {
        self.edge_index(sorted).is_some()
    }

    pub fn edge_index(&self, sorted: &[u32]) -> Option<usize> {
        if sorted.len() != self.d + 1 {
            return None;
        }
        let first = *sorted.first()? as usize;
        if first >= self.n {
            return None;
        }
        // every edge containing its minimum vertex is incident to it
        self.incident(first as u32)
            .iter()
            .map(|&e| e as usize)
            .find(|&e| self.edge(e) == sorted)
    }

    /// True iff the vertex/edge incidence graph has no cycle.
    pub fn is_berge_acyclic(&self) -> bool {
        let mut dsu = DisjointSet::new(self.n + self.edge_count());
        for (e, edge) in self.edges().enumerate() {
            let node = self.n + e;
            for &v in edge {
                if !dsu.union(node, v as usize) {
                    return false;
                }
            }
        }
        true
    }

    /// Connected components ordered by their smallest vertex. Isolated
    /// vertices form order-0 components.
    pub fn components(&self) -> Vec<Component> {
        let mut dsu = DisjointSet::new(self.n);
        for edge in self.edges() {
            for w in edge.windows(2) {
                dsu.union(w[0] as usize, w[1] as usize);
            }
        }
        let mut slot = vec![u32::MAX; self.n];
        let mut out: Vec<Component> = Vec::new();
        for v in 0..self.n {
            let r = dsu.find(v);
            if slot[r] == u32::MAX {
                slot[r] = out.len() as u32;
                out.push(Component { vertices: Vec::new(), edges: Vec::new(), berge_tree: false, unicyclic: false });
            }
            out[slot[r] as usize].vertices.push(v as u32);
        }
        for (e, edge) in self.edges().enumerate() {
            let c = slot[dsu.find(edge[0] as usize)] as usize;
            out[c].edges.push(e as u32);
        }
        for c in &mut out {
            let v = c.vertices.len();
            let md = c.edges.len() * self.d;
            c.berge_tree = v == 1 + md;
            c.unicyclic = v == md;
        }
        out
    }

    /// Berge-tree test for one component by depth-first search over its
    /// incidence graph, independent of the vertex-count criterion stored in
    /// [`Component::berge_tree`].
    pub fn component_is_berge_tree(&self, c: &Component) -> bool {
        let Some(&start) = c.vertices.first() else {
            return false;
        };
        let n = self.n;
        // incidence node ids: vertices 0..n, edges n..n+m
        let mut parent: hashbrown::HashMap<usize, usize> = hashbrown::HashMap::new();
        let mut stack = vec![(start as usize, usize::MAX)];
        parent.insert(start as usize, usize::MAX);
        while let Some((node, from)) = stack.pop() {
            let neighbours: Vec<usize> = if node < n {
                self.incident(node as u32).iter().map(|&e| n + e as usize).collect()
            } else {
                self.edge(node - n).iter().map(|&v| v as usize).collect()
            };
            for next in neighbours {
                if next == from {
                    continue;
                }
                if parent.contains_key(&next) {
                    return false;
                }
                parent.insert(next, node);
                stack.push((next, node));
            }
        }
        parent.len() == c.vertices.len() + c.edges.len()
    }

    /// Sub-hypergraph induced by every vertex within `r` edge-hops of `v`.
    pub fn ball(&self, v: u32, r: u32) -> Result<Ball> {
        if v as usize >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut local = hashbrown::HashMap::new();
        let mut origin = vec![v];
        let mut depth = vec![0u32];
        local.insert(v, 0u32);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            let dx = depth[local[&x] as usize];
            if dx == r {
                continue;
            }
            for &e in self.incident(x) {
                for &w in self.edge(e as usize) {
                    if !local.contains_key(&w) {
                        local.insert(w, origin.len() as u32);
                        origin.push(w);
                        depth.push(dx + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut edges = Vec::new();
        for &x in &origin {
            for &e in self.incident(x) {
                let edge = self.edge(e as usize);
                // visit each edge once, from its smallest vertex inside the ball
                if edge.iter().find(|w| local.contains_key(*w)) != Some(&x) {
                    continue;
                }
                if let Some(mapped) = edge.iter().map(|w| local.get(w).copied()).collect::<Option<Vec<u32>>>() {
                    edges.push(mapped);
                }
            }
        }
        let graph = Hypergraph::from_edges_unchecked(origin.len(), self.d, edges);
        Ok(Ball { graph, origin, depth })
    }

    /// Sub-hypergraph on `vertices` (in the given order, which becomes the
    /// new labelling) keeping the edges lying entirely inside.
    pub fn induced(&self, vertices: &[u32]) -> Hypergraph {
        let mut local = hashbrown::HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            local.insert(v, i as u32);
        }
        let mut edges = Vec::new();
        let mut seen = hashbrown::HashSet::new();
        for &v in vertices {
            for &e in self.incident(v) {
                if !seen.insert(e) {
                    continue;
                }
                if let Some(mapped) = self.edge(e as usize).iter().map(|w| local.get(w).copied()).collect::<Option<Vec<u32>>>() {
                    edges.push(mapped);
                }
            }
        }
        Hypergraph::from_edges_unchecked(vertices.len(), self.d, edges)
    }

    /// The component as a stand-alone hypergraph on `0..|V(C)|`.
    pub fn component_graph(&self, c: &Component) -> Hypergraph {
        let mut local = hashbrown::HashMap::with_capacity(c.vertices.len());
        for (i, &v) in c.vertices.iter().enumerate() {
            local.insert(v, i as u32);
        }
        let edges = c
            .edges
            .iter()
            .map(|&e| self.edge(e as usize).iter().map(|w| local[w]).collect())
            .collect();
        Hypergraph::from_edges_unchecked(c.vertices.len(), self.d, edges)
    }

    /// Image under the vertex permutation `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[u32]) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(alloc::format!(
                "permutation of length {} for n = {}",
                perm.len(),
                self.n
            )));
        }
        let edges: Vec<Vec<u32>> = self.edges().map(|e| e.iter().map(|&v| perm[v as usize]).collect()).collect();
        Hypergraph::build(self.n, self.d, edges)
    }

    /// Disjoint union, with `other`'s vertices shifted past ours.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.d != other.d {
            return Err(Error::InvalidParameter("uniformity mismatch in disjoint union".into()));
        }
        let shift = self.n as u32;
        let edges = self
            .edges()
            .map(|e| e.to_vec())
            .chain(other.edges().map(|e| e.iter().map(|&v| v + shift).collect()))
            .collect();
        Ok(Hypergraph::from_edges_unchecked(self.n + other.n, self.d, edges))
    }

    /// Exhaustive isomorphism test with degree pruning, for small inputs.
    pub fn is_isomorphic(&self, other: &Hypergraph) -> bool {
        if self.d != other.d || self.n != other.n || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut da: Vec<usize> = (0..self.n as u32).map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = (0..other.n as u32).map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return false;
        }
        let mut map = vec![u32::MAX; self.n];
        let mut used = vec![false; other.n];
        self.extend_iso(other, 0, &mut map, &mut used)
    }

    fn extend_iso(&self, other: &Hypergraph, v: usize, map: &mut [u32], used: &mut [bool]) -> bool {
        if v == self.n {
            return true;
        }
        for w in 0..other.n {
            if used[w] || self.degree(v as u32) != other.degree(w as u32) {
                continue;
            }
            map[v] = w as u32;
            // every edge of self whose vertices are all mapped must map to an edge, and
            // the number of fully mapped edges must agree on both sides
            let ok = self.incident(v as u32).iter().all(|&e| {
                let edge = self.edge(e as usize);
                if edge.iter().any(|&x| map[x as usize] == u32::MAX) {
                    return true;
                }
                let mut img: Vec<u32> = edge.iter().map(|&x| map[x as usize]).collect();
                img.sort_unstable();
                other.has_edge(&img)
            }) && {
                used[w] = true;
                let mapped_here = self
                    .incident(v as u32)
                    .iter()
                    .filter(|&&e| self.edge(e as usize).iter().all(|&x| map[x as usize] != u32::MAX))
                    .count();
                let mapped_there = other
                    .incident(w as u32)
                    .iter()
                    .filter(|&&e| other.edge(e as usize).iter().all(|&y| used[y as usize]))
                    .count();
                used[w] = false;
                mapped_here == mapped_there
            };
            if ok {
                used[w] = true;
                if self.extend_iso(other, v + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
            map[v] = u32::MAX;
        }
        false
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<u32>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already in the same set.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[[u32; 2]]) -> Hypergraph {
        Hypergraph::build(n, 1, edges).unwrap()
    }

    fn triangle() -> Hypergraph {
        graph(3, &[[0, 1], [1, 2], [0, 2]])
    }

    #[test]
    fn build_canonicalizes() {
        let h = graph(3, &[[1, 0], [2, 1]]);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.edge(0), &[0, 1]);
        let h = Hypergraph::build(3, 2, [[0, 1, 2], [2, 1, 0]]).unwrap();
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn build_rejects_bad_edges() {
        let err = Hypergraph::build(2, 2, [[0, 1, 2]]).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidEdge { edge: vec![0, 1, 2], defect: EdgeDefect::VertexOutOfRange { n: 2 } }
        );
        let err = Hypergraph::build(4, 2, [[0, 1, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidEdge { defect: EdgeDefect::RepeatedVertex, .. }));
        let err = Hypergraph::build(4, 2, [vec![0u32, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidEdge { defect: EdgeDefect::WrongArity { expected: 3 }, .. }));
        assert_eq!(Hypergraph::empty(3, 0).unwrap_err(), Error::InvalidUniformity(0));
    }

    #[test]
    fn acyclicity() {
        assert!(!triangle().is_berge_acyclic());
        assert!(Hypergraph::build(3, 2, [[0, 1, 2]]).unwrap().is_berge_acyclic());
        let two = Hypergraph::build(4, 2, [[0, 1, 2], [0, 1, 3]]).unwrap();
        assert!(!two.is_berge_acyclic());
    }

    #[test]
    fn component_partition() {
        let h = graph(5, &[[0, 1], [2, 3]]);
        let cs = h.components();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs.iter().filter(|c| c.order() == 1).count(), 2);
        assert_eq!(cs[2].vertices, vec![4]);
        assert!(cs.iter().all(|c| c.berge_tree));
        assert_eq!(graph(3, &[[0, 1], [1, 2]]).components().len(), 1);
        assert_eq!(Hypergraph::empty(4, 1).unwrap().components().len(), 4);
    }

    #[test]
    fn tree_criterion() {
        let path = graph(3, &[[0, 1], [1, 2]]);
        let c = &path.components()[0];
        assert!(c.berge_tree && path.component_is_berge_tree(c));
        let t = triangle();
        let c = &t.components()[0];
        assert!(!c.berge_tree && c.unicyclic && !t.component_is_berge_tree(c));
        let h = Hypergraph::build(5, 2, [[0, 1, 2], [2, 3, 4]]).unwrap();
        let c = &h.components()[0];
        assert!(c.berge_tree && h.component_is_berge_tree(c));
    }

    #[test]
    fn degrees() {
        let star = graph(4, &[[0, 1], [0, 2], [0, 3]]);
        assert_eq!(star.degree(0), 3);
        assert_eq!(graph(2, &[]).degree(1), 0);
        assert_eq!(Hypergraph::build(3, 2, [[0, 1, 2]]).unwrap().degree(2), 1);
    }

    #[test]
    fn balls() {
        let star = graph(4, &[[0, 1], [0, 2], [0, 3]]);
        let b0 = star.ball(0, 0).unwrap();
        assert_eq!(b0.graph.n(), 1);
        assert_eq!(b0.graph.edge_count(), 0);
        let b1 = star.ball(0, 1).unwrap();
        assert!(b1.graph.is_isomorphic(&star));
        for r in 1..4 {
            assert!(triangle().ball(1, r).unwrap().graph.is_isomorphic(&triangle()));
        }
        // depth-1 edge between two leaves stays inside the ball
        let path = graph(4, &[[0, 1], [1, 2], [2, 3]]);
        let b = path.ball(0, 2).unwrap();
        assert_eq!(b.graph.n(), 3);
        assert_eq!(b.graph.edge_count(), 2);
        assert_eq!(b.depth, vec![0, 1, 2]);
    }

    #[test]
    fn isomorphism() {
        let p = graph(4, &[[0, 1], [1, 2], [2, 3]]);
        let q = graph(4, &[[2, 0], [0, 3], [3, 1]]);
        let star = graph(4, &[[0, 1], [0, 2], [0, 3]]);
        assert!(p.is_isomorphic(&q));
        assert!(!p.is_isomorphic(&star));
        assert!(!graph(6, &[[0, 1], [1, 2], [2, 0], [3, 4], [4, 5], [5, 3]])
            .is_isomorphic(&graph(6, &[[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0]])));
    }
}

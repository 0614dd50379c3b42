//! Marked Berge-trees and their partially induced copies in a host.
//!
//! A copy of a marked tree is a (not necessarily induced) sub-hypergraph
//! isomorphic to it in which every marked vertex has exactly its tree degree
//! in the host. Unmarked vertices may carry further edges.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::canon::{canonize, CanonicalCode};
use super::{enumerate_tree_types_with, EnumerationLimits};
use crate::error::{Error, Result};
use crate::math::factorial;
use crate::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedBergeTreeType {
    pub d: usize,
    pub order: usize,
    /// Representative tree on `0..1 + order·d`.
    pub tree: Hypergraph,
    pub marks: Vec<bool>,
    /// Code of the marked tree (marks are part of the colouring).
    pub code: CanonicalCode,
    /// Code of the underlying unmarked tree.
    pub tree_code: CanonicalCode,
    pub v_star: usize,
    pub minimal: bool,
    /// Automorphisms preserving the marked set.
    pub automorphisms: u128,
}

impl MarkedBergeTreeType {
    pub fn new(tree: &Hypergraph, marks: &[bool]) -> Result<Self> {
        if marks.len() != tree.n() {
            return Err(Error::InvalidParameter("one mark flag per vertex expected".into()));
        }
        let (code, automorphisms) = canonize(tree, Some(marks))?;
        let (tree_code, _) = canonize(tree, None)?;
        Ok(MarkedBergeTreeType {
            d: tree.d(),
            order: tree.edge_count(),
            tree: tree.clone(),
            marks: marks.to_vec(),
            code,
            tree_code,
            v_star: marks.iter().filter(|&&m| m).count(),
            minimal: is_minimal(tree, marks),
            automorphisms,
        })
    }

    pub fn vertices(&self) -> usize {
        self.tree.n()
    }

    pub fn marked_vertices(&self) -> Vec<u32> {
        (0..self.marks.len() as u32).filter(|&v| self.marks[v as usize]).collect()
    }

    /// `c(l, v*, γ)`: labelled copies on `1 + l·d` labelled vertices.
    pub fn labelled_count(&self) -> u128 {
        factorial(self.vertices() as u64).expect("bounded by the enumeration limit") / self.automorphisms
    }
}

/// Every leaf edge contains a marked vertex.
///
/// A leaf is an edge meeting exactly one other edge. The single edge of an
/// order-1 tree meets none and is treated as a leaf as well; an order-0 tree
/// has no edges and is minimal.
pub fn is_minimal(tree: &Hypergraph, marks: &[bool]) -> bool {
    let m = tree.edge_count();
    tree.edges().all(|edge| {
        let neighbours: usize = edge.iter().map(|&v| tree.degree(v) - 1).sum();
        let leaf = neighbours == 1 || m == 1;
        !leaf || edge.iter().any(|&v| marks[v as usize])
    })
}

/// All `v*`-marked Berge-trees of order `l` up to mark-preserving
/// isomorphism, sorted by marked code.
pub fn enumerate_marked_types(d: usize, l: usize, v_star: usize, minimal_only: bool) -> Result<Vec<MarkedBergeTreeType>> {
    enumerate_marked_types_with(d, l, v_star, minimal_only, EnumerationLimits::default())
}

pub fn enumerate_marked_types_with(
    d: usize,
    l: usize,
    v_star: usize,
    minimal_only: bool,
    limits: EnumerationLimits,
) -> Result<Vec<MarkedBergeTreeType>> {
    let v = 1 + l * d;
    if v_star > v {
        return Err(Error::InvalidParameter(alloc::format!("v* = {v_star} exceeds the {v} vertices of the tree")));
    }
    let mut out: BTreeMap<CanonicalCode, MarkedBergeTreeType> = BTreeMap::new();
    for t in enumerate_tree_types_with(d, l, limits)? {
        for subset in subsets(v, v_star) {
            let mut marks = vec![false; v];
            for &i in &subset {
                marks[i] = true;
            }
            if minimal_only && !is_minimal(&t.representative, &marks) {
                continue;
            }
            let (code, _) = canonize(&t.representative, Some(&marks))?;
            if out.contains_key(&code) {
                continue;
            }
            let ty = MarkedBergeTreeType::new(&t.representative, &marks)?;
            out.insert(code, ty);
        }
    }
    Ok(out.into_values().collect())
}

/// k-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    core::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Number of copies of `m` in `host`, counted as distinct image
/// configurations (labelled embeddings divided by `|Aut(m)|`).
pub fn count_marked_copies(host: &Hypergraph, m: &MarkedBergeTreeType) -> Result<u64> {
    if host.d() != m.d {
        return Err(Error::InvalidParameter("host and pattern uniformity differ".into()));
    }
    let plan = EmbeddingPlan::new(m);
    let embeddings = plan.count(host);
    let aut = m.automorphisms as u64;
    debug_assert_eq!(embeddings % aut, 0, "embeddings come in full automorphism orbits");
    Ok(embeddings / aut)
}

struct Step {
    edge_anchor: u32,
    others: Vec<u32>,
}

/// Edge order for backtracking: breadth-first from a marked vertex when
/// there is one, so the most selective degree constraint is tried first.
struct EmbeddingPlan {
    start: u32,
    steps: Vec<Step>,
    /// Required host degree: `Some(k)` exactly for marked vertices.
    exact: Vec<Option<usize>>,
    min_degree: Vec<usize>,
    perms: Vec<Vec<usize>>,
    vertices: usize,
}

impl EmbeddingPlan {
    fn new(m: &MarkedBergeTreeType) -> Self {
        let t = &m.tree;
        let start = m.marks.iter().position(|&x| x).unwrap_or(0) as u32;
        let mut seen_v = vec![false; t.n()];
        let mut seen_e = vec![false; t.edge_count()];
        let mut queue = alloc::collections::VecDeque::from([start]);
        seen_v[start as usize] = true;
        let mut steps = Vec::new();
        while let Some(x) = queue.pop_front() {
            for &e in t.incident(x) {
                if seen_e[e as usize] {
                    continue;
                }
                seen_e[e as usize] = true;
                let others: Vec<u32> = t.edge(e as usize).iter().copied().filter(|&w| w != x).collect();
                for &w in &others {
                    seen_v[w as usize] = true;
                    queue.push_back(w);
                }
                steps.push(Step { edge_anchor: x, others });
            }
        }
        let exact = (0..t.n() as u32).map(|v| m.marks[v as usize].then(|| t.degree(v))).collect();
        let min_degree = (0..t.n() as u32).map(|v| t.degree(v)).collect();
        EmbeddingPlan { start, steps, exact, min_degree, perms: permutations(m.d), vertices: t.n() }
    }

    fn admissible(&self, host: &Hypergraph, pattern: u32, image: u32) -> bool {
        let deg = host.degree(image);
        match self.exact[pattern as usize] {
            Some(k) => deg == k,
            None => deg >= self.min_degree[pattern as usize],
        }
    }

    fn count(&self, host: &Hypergraph) -> u64 {
        let mut state = Embedding {
            map: vec![u32::MAX; self.vertices],
            used_vertices: Vec::with_capacity(self.vertices),
            used_edges: Vec::with_capacity(self.steps.len()),
        };
        let mut total = 0;
        for h in 0..host.n() as u32 {
            if !self.admissible(host, self.start, h) {
                continue;
            }
            state.map[self.start as usize] = h;
            state.used_vertices.push(h);
            total += self.extend(host, 0, &mut state);
            state.used_vertices.pop();
            state.map[self.start as usize] = u32::MAX;
        }
        total
    }

    fn extend(&self, host: &Hypergraph, step: usize, st: &mut Embedding) -> u64 {
        let Some(Step { edge_anchor, others }) = self.steps.get(step) else {
            return 1;
        };
        let anchor_image = st.map[*edge_anchor as usize];
        let mut total = 0;
        for &he in host.incident(anchor_image) {
            if st.used_edges.contains(&he) {
                continue;
            }
            let rest: Vec<u32> = host.edge(he as usize).iter().copied().filter(|&w| w != anchor_image).collect();
            if rest.iter().any(|w| st.used_vertices.contains(w)) {
                continue;
            }
            st.used_edges.push(he);
            for perm in &self.perms {
                if !others.iter().zip(perm).all(|(&p, &j)| self.admissible(host, p, rest[j])) {
                    continue;
                }
                for (&p, &j) in others.iter().zip(perm) {
                    st.map[p as usize] = rest[j];
                    st.used_vertices.push(rest[j]);
                }
                total += self.extend(host, step + 1, st);
                for &p in others {
                    st.map[p as usize] = u32::MAX;
                    st.used_vertices.pop();
                }
            }
            st.used_edges.pop();
        }
        total
    }
}

struct Embedding {
    map: Vec<u32>,
    used_vertices: Vec<u32>,
    used_edges: Vec<u32>,
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    permute(&mut current, 0, &mut out);
    out
}

fn permute(a: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
    if i == a.len() {
        out.push(a.clone());
        return;
    }
    for j in i..a.len() {
        a.swap(i, j);
        permute(a, i + 1, out);
        a.swap(i, j);
    }
}

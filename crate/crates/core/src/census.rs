//! Empirical statistics of a single hypergraph: Berge-tree components,
//! marked-tree copies, incidence cycles, and `(r, s)`-values of balls.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::berge::{canonical_code, count_marked_copies, enumerate_marked_types, MarkedBergeTreeType};
use crate::error::{Error, Result};
use crate::math::Count;
use crate::Hypergraph;

pub const RESIDUAL_LARGE_TREE: &str = "tree:order>l_max";
pub const RESIDUAL_NON_TREE: &str = "non-tree";
pub const RESIDUAL_MULTICYCLIC: &str = "multicyclic";

/// Counts keyed by canonical codes, plus residual buckets for everything the
/// keyed part does not classify.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusReport {
    pub counts: BTreeMap<String, u64>,
    pub residual: BTreeMap<String, u64>,
}

impl CensusReport {
    pub fn get(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn residual(&self, key: &str) -> u64 {
        self.residual.get(key).copied().unwrap_or(0)
    }

    /// Keyed plus residual counts.
    pub fn total(&self) -> u64 {
        self.counts.values().chain(self.residual.values()).sum()
    }

    pub fn merge(&mut self, other: &CensusReport) {
        for (k, v) in &other.counts {
            *self.counts.entry(k.clone()).or_insert(0) += v;
        }
        for (k, v) in &other.residual {
            *self.residual.entry(k.clone()).or_insert(0) += v;
        }
    }

    fn bump(map: &mut BTreeMap<String, u64>, key: &str) {
        if let Some(v) = map.get_mut(key) {
            *v += 1;
        } else {
            map.insert(key.to_string(), 1);
        }
    }
}

/// Components that are Berge-trees of order at most `l_max`, keyed by
/// canonical code. Isolated vertices are the order-0 trees.
pub fn tree_component_census(h: &Hypergraph, l_max: usize) -> CensusReport {
    let mut report = CensusReport::default();
    // orders 0 and 1 have a single type each, so skip canonization there
    let single = [
        canonical_code(&Hypergraph::empty(1, h.d()).expect("d >= 1")).expect("a vertex is a tree").to_string(),
        canonical_code(&Hypergraph::build(h.d() + 1, h.d(), [(0..=h.d() as u32).collect::<Vec<_>>()]).expect("valid edge"))
            .expect("an edge is a tree")
            .to_string(),
    ];
    for c in h.components() {
        if !c.berge_tree {
            CensusReport::bump(&mut report.residual, RESIDUAL_NON_TREE);
        } else if c.order() > l_max {
            CensusReport::bump(&mut report.residual, RESIDUAL_LARGE_TREE);
        } else if c.order() <= 1 {
            CensusReport::bump(&mut report.counts, &single[c.order()]);
        } else {
            let code = canonical_code(&h.component_graph(&c)).expect("component is a Berge-tree");
            CensusReport::bump(&mut report.counts, code.as_str());
        }
    }
    report
}

/// `A(l, v*, γ)` for every minimal `v*`-marked type of order `l`.
pub fn marked_copy_census(h: &Hypergraph, l: usize, v_star: usize) -> Result<CensusReport> {
    let types = enumerate_marked_types(h.d(), l, v_star, true)?;
    marked_copy_census_for(h, &types)
}

/// As [`marked_copy_census`] for a precomputed list of types; every type gets
/// an entry, including zero counts.
pub fn marked_copy_census_for(h: &Hypergraph, types: &[MarkedBergeTreeType]) -> Result<CensusReport> {
    let mut report = CensusReport::default();
    for t in types {
        report.counts.insert(t.code.to_string(), count_marked_copies(h, t)?);
    }
    Ok(report)
}

/// Number of incidence-graph cycles with exactly `t` edges, for `t` in
/// `0..=t_max` (entries below 2 are always zero).
pub fn cycle_counts(h: &Hypergraph, t_max: usize) -> Vec<u64> {
    let mut counts = vec![0u64; t_max + 1];
    if t_max < 2 {
        return counts;
    }
    let mut on_path = vec![false; h.n()];
    let mut edge_used = vec![false; h.edge_count()];
    for e0 in 0..h.edge_count() as u32 {
        edge_used[e0 as usize] = true;
        for &sv in h.edge(e0 as usize) {
            on_path[sv as usize] = true;
            for &e1 in h.incident(sv) {
                if e1 > e0 {
                    let mut walk = CycleWalk { h, e0, t_max, on_path: &mut on_path, edge_used: &mut edge_used, counts: &mut counts };
                    walk.extend(e1, sv, 2);
                }
            }
            on_path[sv as usize] = false;
        }
        edge_used[e0 as usize] = false;
    }
    // every cycle is traversed once in each direction from its smallest edge
    for c in &mut counts {
        *c /= 2;
    }
    counts
}

struct CycleWalk<'a> {
    h: &'a Hypergraph,
    e0: u32,
    t_max: usize,
    on_path: &'a mut [bool],
    edge_used: &'a mut [bool],
    counts: &'a mut [u64],
}

impl CycleWalk<'_> {
    /// The path currently ends in edge `ce` (the `t`-th edge), entered via `lv`.
    fn extend(&mut self, ce: u32, lv: u32, t: usize) {
        self.edge_used[ce as usize] = true;
        for &w in self.h.edge(ce as usize) {
            if w == lv || self.on_path[w as usize] {
                continue;
            }
            if self.h.edge(self.e0 as usize).contains(&w) {
                self.counts[t] += 1;
            }
            if t < self.t_max {
                self.on_path[w as usize] = true;
                for &e in self.h.incident(w) {
                    if e > self.e0 && !self.edge_used[e as usize] {
                        self.extend(e, w, t + 1);
                    }
                }
                self.on_path[w as usize] = false;
            }
        }
        self.edge_used[ce as usize] = false;
    }
}

/// Cycle counts as a report keyed `C2`, `C3`, ... up to `t_max`.
pub fn cycle_census(h: &Hypergraph, t_max: usize) -> CensusReport {
    let mut report = CensusReport::default();
    for (t, &c) in cycle_counts(h, t_max).iter().enumerate().skip(2) {
        report.counts.insert(format!("C{t}"), c);
    }
    report
}

/// An element of `VAL(r, s)`: for `r ≥ 1`, the number of root edges of each
/// pattern, truncated at `s`. Patterns with zero edges are omitted, so
/// equality of values is structural equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value {
    r: u32,
    s: u32,
    edges: BTreeMap<Pattern, Count>,
}

/// An element of `PAT(r, s)`: the multiset of the `d` values below one edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    children: BTreeMap<Value, u32>,
}

impl Value {
    /// The unique element of `VAL(0, s)`.
    pub fn trivial(s: u32) -> Self {
        Value { r: 0, s, edges: BTreeMap::new() }
    }

    /// The value with no root edges at all.
    pub fn empty(r: u32, s: u32) -> Self {
        Value { r, s, edges: BTreeMap::new() }
    }

    /// Builds a value from pattern counts; zero counts are dropped.
    pub fn from_counts(r: u32, s: u32, counts: impl IntoIterator<Item = (Pattern, Count)>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("VAL(0, s) has no pattern counts".into()));
        }
        let mut edges = BTreeMap::new();
        for (p, c) in counts {
            if p.children.keys().any(|v| v.r != r - 1 || v.s != s) {
                return Err(Error::InvalidParameter("pattern depth does not match the value".into()));
            }
            match c {
                Count::Exactly(0) => {}
                Count::Exactly(k) if k > s => return Err(Error::InvalidParameter("count above the cap s".into())),
                c => {
                    edges.insert(p, c);
                }
            }
        }
        Ok(Value { r, s, edges })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn count(&self, p: &Pattern) -> Count {
        self.edges.get(p).copied().unwrap_or(Count::Exactly(0))
    }

    /// Patterns with a nonzero count.
    pub fn patterns(&self) -> impl Iterator<Item = (&Pattern, Count)> {
        self.edges.iter().map(|(p, &c)| (p, c))
    }

    /// The induced `(r', s')`-value for `r' ≤ r`, `s' ≤ s`.
    pub fn coarsen(&self, r: u32, s: u32) -> Result<Value> {
        if r > self.r || s > self.s {
            return Err(Error::InvalidParameter(format!(
                "cannot refine a ({}, {})-value to ({r}, {s})",
                self.r, self.s
            )));
        }
        if r == 0 {
            return Ok(Value::trivial(s));
        }
        let mut merged: BTreeMap<Pattern, Count> = BTreeMap::new();
        for (p, &c) in &self.edges {
            let q = p.coarsen(r - 1, s)?;
            let entry = merged.entry(q).or_insert(Count::Exactly(0));
            *entry = match (*entry, c) {
                (Count::Exactly(a), Count::Exactly(b)) => Count::capped(u64::from(a) + u64::from(b), s),
                _ => Count::Many,
            };
        }
        Ok(Value { r, s, edges: merged.into_iter().map(|(p, c)| (p, c.recap(s))).collect() })
    }
}

impl Pattern {
    pub fn new(children: impl IntoIterator<Item = Value>) -> Self {
        let mut map = BTreeMap::new();
        for v in children {
            *map.entry(v).or_insert(0) += 1;
        }
        Pattern { children: map }
    }

    /// Total multiplicity, which is `d` for patterns of a `(d+1)`-uniform tree.
    pub fn len(&self) -> u32 {
        self.children.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn children(&self) -> impl Iterator<Item = (&Value, u32)> {
        self.children.iter().map(|(v, &k)| (v, k))
    }

    fn coarsen(&self, r: u32, s: u32) -> Result<Pattern> {
        let mut map = BTreeMap::new();
        for (v, &k) in &self.children {
            *map.entry(v.coarsen(r, s)?).or_insert(0) += k;
        }
        Ok(Pattern { children: map })
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 0 {
            return f.write_str("*");
        }
        f.write_str("{")?;
        for (i, (p, c)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}:{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        let mut first = true;
        for (v, &k) in &self.children {
            for _ in 0..k {
                if !first {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
        }
        f.write_str("]")
    }
}

/// The `(r, s)`-value of a ball, or `NonTree` when the ball has a cycle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BallValue {
    Tree(Value),
    NonTree,
}

impl fmt::Display for BallValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BallValue::Tree(v) => v.fmt(f),
            BallValue::NonTree => f.write_str("non-tree"),
        }
    }
}

/// Value of the subtree hanging from `x`, with `rem` levels left, ignoring
/// the edges in `excluded`. The region explored must be acyclic.
fn value_below(h: &Hypergraph, x: u32, rem: u32, s: u32, excluded: &[u32]) -> Value {
    if rem == 0 {
        return Value::trivial(s);
    }
    let mut counts: BTreeMap<Pattern, u64> = BTreeMap::new();
    for &e in h.incident(x) {
        if excluded.contains(&e) {
            continue;
        }
        let p = Pattern::new(h.edge(e as usize).iter().filter(|&&w| w != x).map(|&w| value_below(h, w, rem - 1, s, &[e])));
        *counts.entry(p).or_insert(0) += 1;
    }
    Value { r: rem, s, edges: counts.into_iter().map(|(p, k)| (p, Count::capped(k, s))).collect() }
}

pub fn value_of_ball(h: &Hypergraph, v: u32, r: u32, s: u32) -> Result<BallValue> {
    let ball = h.ball(v, r)?;
    if !ball.graph.is_berge_acyclic() {
        return Ok(BallValue::NonTree);
    }
    Ok(BallValue::Tree(value_below(&ball.graph, ball.root(), r, s, &[])))
}

/// Relative frequency of each ball value over all vertices as roots.
pub fn value_distribution(h: &Hypergraph, r: u32, s: u32) -> Result<BTreeMap<BallValue, f64>> {
    let mut counts: BTreeMap<BallValue, u64> = BTreeMap::new();
    for v in 0..h.n() as u32 {
        *counts.entry(value_of_ball(h, v, r, s)?).or_insert(0) += 1;
    }
    let n = h.n() as f64;
    Ok(counts.into_iter().map(|(k, c)| (k, c as f64 / n)).collect())
}

/// Unicyclic components keyed by their cycle length together with the
/// `(r, s)`-values of the trees hanging off the cycle. Components with more
/// than one cycle go to the residual bucket; tree components are ignored.
///
/// Off-cycle vertices of a cycle edge are one hop from the cycle, so their
/// hanging trees are described by `(r-1, s)`-values.
pub fn unicyclic_pattern_census(h: &Hypergraph, r: u32, s: u32) -> CensusReport {
    let mut report = CensusReport::default();
    for c in h.components() {
        if c.berge_tree {
            continue;
        }
        if !c.unicyclic {
            CensusReport::bump(&mut report.residual, RESIDUAL_MULTICYCLIC);
            continue;
        }
        let code = unicyclic_code(h, &c.vertices, &c.edges, r, s);
        CensusReport::bump(&mut report.counts, &code);
    }
    report
}

/// Number of unicyclic components per cycle length, ignoring hanging trees.
pub fn unicyclic_cycle_lengths(h: &Hypergraph) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for c in h.components() {
        if c.unicyclic && !c.berge_tree {
            let (cycle_vertices, _) = cycle_of_unicyclic(h, &c.vertices, &c.edges);
            *out.entry(cycle_vertices.len()).or_insert(0) += 1;
        }
    }
    out
}

/// Vertices and edges of the unique cycle, in traversal order: edge `i`
/// joins vertex `i` and vertex `i + 1`.
fn cycle_of_unicyclic(h: &Hypergraph, vertices: &[u32], edges: &[u32]) -> (Vec<u32>, Vec<u32>) {
    // peel incidence-graph leaves; what remains is the cycle
    let mut vdeg: BTreeMap<u32, usize> = vertices.iter().map(|&v| (v, h.degree(v))).collect();
    let mut edeg: BTreeMap<u32, usize> = edges.iter().map(|&e| (e, h.d() + 1)).collect();
    let mut stack: Vec<(bool, u32)> = vdeg.iter().filter(|(_, &k)| k == 1).map(|(&v, _)| (true, v)).collect();
    let mut alive_v: BTreeMap<u32, bool> = vertices.iter().map(|&v| (v, true)).collect();
    let mut alive_e: BTreeMap<u32, bool> = edges.iter().map(|&e| (e, true)).collect();
    while let Some((is_vertex, x)) = stack.pop() {
        if is_vertex {
            if !alive_v[&x] || vdeg[&x] != 1 {
                continue;
            }
            alive_v.insert(x, false);
            for &e in h.incident(x) {
                if alive_e[&e] {
                    let k = edeg.get_mut(&e).expect("edge of the component");
                    *k -= 1;
                    if *k == 1 {
                        stack.push((false, e));
                    }
                }
            }
        } else {
            if !alive_e[&x] || edeg[&x] != 1 {
                continue;
            }
            alive_e.insert(x, false);
            for &w in h.edge(x as usize) {
                if alive_v[&w] {
                    let k = vdeg.get_mut(&w).expect("vertex of the component");
                    *k -= 1;
                    if *k == 1 {
                        stack.push((true, w));
                    }
                }
            }
        }
    }
    // isolated leftovers (degree 0) cannot occur in a connected component with a cycle
    let cyc_v: Vec<u32> = vertices.iter().copied().filter(|v| alive_v[v] && vdeg[v] >= 2).collect();
    let start = cyc_v[0];
    let mut order_v = vec![start];
    let mut order_e = Vec::new();
    let mut prev_e = u32::MAX;
    let mut x = start;
    loop {
        let e = h
            .incident(x)
            .iter()
            .copied()
            .find(|&e| alive_e[&e] && e != prev_e && edeg[&e] >= 2)
            .expect("cycle vertices have two cycle edges");
        order_e.push(e);
        let y = h
            .edge(e as usize)
            .iter()
            .copied()
            .find(|&w| w != x && alive_v[&w] && vdeg[&w] >= 2)
            .expect("cycle edges have two cycle vertices");
        if y == start {
            break;
        }
        order_v.push(y);
        prev_e = e;
        x = y;
    }
    (order_v, order_e)
}

fn unicyclic_code(h: &Hypergraph, vertices: &[u32], edges: &[u32], r: u32, s: u32) -> String {
    let (cv, ce) = cycle_of_unicyclic(h, vertices, edges);
    let t = cv.len();
    let mut tokens: Vec<String> = Vec::with_capacity(2 * t);
    for i in 0..t {
        let prev = ce[(i + t - 1) % t];
        let next = ce[i];
        tokens.push(value_below(h, cv[i], r, s, &[prev, next]).to_string());
        let ends = [cv[i], cv[(i + 1) % t]];
        let mut hanging: Vec<String> = h
            .edge(next as usize)
            .iter()
            .filter(|w| !ends.contains(w))
            .map(|&w| value_below(h, w, r.saturating_sub(1), s, &[next]).to_string())
            .collect();
        hanging.sort();
        tokens.push(format!("<{}>", hanging.join(",")));
    }
    let mut best: Option<Vec<String>> = None;
    let mut reversed = tokens.clone();
    reversed.reverse();
    // reversed = E_{t-1}, V_{t-1}, ..., E_0, V_0; rotate by one so a vertex leads
    reversed.rotate_right(1);
    for seq in [&tokens, &reversed] {
        for i in 0..t {
            let mut rot = seq.clone();
            rot.rotate_left(2 * i);
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    format!("cycle{t}:{}", best.expect("t >= 2").join("|"))
}

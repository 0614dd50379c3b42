//! Finite-depth weighted spanning trees of the space of completions.
//!
//! Level `h` partitions the space by the events "coordinate `i` equals `k`"
//! for `k ≤ h` and "coordinate `i` is at least `h + 1`". A node's weight is
//! the limiting probability of its event under independent Poisson laws.

use alloc::vec::Vec;
use core::fmt;

use crate::berge::enumerate_tree_types;
use crate::error::{Error, Result};
use crate::math::{poisson_pmf, poisson_tail};
use crate::theory::{PoissonPrediction, Regime};

/// One coordinate of a node's event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Exactly(u32),
    AtLeast(u32),
}

impl Cell {
    pub fn probability(self, lambda: f64) -> f64 {
        match self {
            Cell::Exactly(k) => poisson_pmf(lambda, u64::from(k)),
            Cell::AtLeast(0) => 1.0,
            Cell::AtLeast(k) => poisson_tail(lambda, k - 1),
        }
    }

    /// The cells partitioning `self` at cap `s`.
    fn refine(self, s: u32) -> Vec<Cell> {
        match self {
            Cell::Exactly(_) => alloc::vec![self],
            Cell::AtLeast(k) => (k..=s).map(Cell::Exactly).chain(core::iter::once(Cell::AtLeast(s + 1))).collect(),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Exactly(k) => write!(f, "{k}"),
            Cell::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpanningNode {
    pub m: Vec<Cell>,
    pub height: u32,
    pub weight: f64,
    pub children: Vec<SpanningNode>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedTree {
    pub lambdas: Vec<f64>,
    /// Level at which each coordinate starts being refined.
    pub introduced: Vec<u32>,
    pub depth: u32,
    pub root: SpanningNode,
}

impl WeightedTree {
    /// All nodes at height `h`, in child order.
    pub fn level(&self, h: u32) -> Vec<&SpanningNode> {
        let mut out = Vec::new();
        collect_level(&self.root, h, &mut out);
        out
    }

    /// Whether every node above the bottom level has at least two children of
    /// positive weight, i.e. no branch is eventually constant up to `depth`.
    pub fn every_node_splits(&self) -> bool {
        fn walk(n: &SpanningNode) -> bool {
            n.children.is_empty() || (n.children.iter().filter(|c| c.weight > 0.0).count() >= 2 && n.children.iter().all(walk))
        }
        walk(&self.root)
    }

    pub fn node_count(&self) -> usize {
        fn walk(n: &SpanningNode) -> usize {
            1 + n.children.iter().map(walk).sum::<usize>()
        }
        walk(&self.root)
    }
}

fn collect_level<'a>(n: &'a SpanningNode, h: u32, out: &mut Vec<&'a SpanningNode>) {
    if n.height == h {
        out.push(n);
    } else {
        for c in &n.children {
            collect_level(c, h, out);
        }
    }
}

/// Spanning tree over the means of `prediction`, all coordinates refined
/// from level 1 on.
pub fn build_weighted_tree(prediction: &PoissonPrediction, depth: u32) -> WeightedTree {
    build_weighted_tree_from_means(&prediction.lambdas(), depth)
}

pub fn build_weighted_tree_from_means(lambdas: &[f64], depth: u32) -> WeightedTree {
    let introduced = alloc::vec![1; lambdas.len()];
    build_weighted_tree_staged(lambdas, &introduced, depth).expect("uniform introduction is valid")
}

/// Spanning tree in which coordinate `i` is left unrefined before level
/// `introduced[i]` (at least 1).
pub fn build_weighted_tree_staged(lambdas: &[f64], introduced: &[u32], depth: u32) -> Result<WeightedTree> {
    if lambdas.len() != introduced.len() {
        return Err(Error::InvalidParameter("one introduction level per mean expected".into()));
    }
    if introduced.contains(&0) {
        return Err(Error::InvalidParameter("coordinates are introduced at level 1 or later".into()));
    }
    if lambdas.iter().any(|l| !(*l >= 0.0 && l.is_finite())) {
        return Err(Error::InvalidParameter("Poisson means must be finite and non-negative".into()));
    }
    let m = alloc::vec![Cell::AtLeast(0); lambdas.len()];
    let mut root = SpanningNode { m, height: 0, weight: 1.0, children: Vec::new() };
    grow(&mut root, lambdas, introduced, depth);
    Ok(WeightedTree { lambdas: lambdas.to_vec(), introduced: introduced.to_vec(), depth, root })
}

fn grow(node: &mut SpanningNode, lambdas: &[f64], introduced: &[u32], depth: u32) {
    if node.height == depth {
        return;
    }
    let h = node.height + 1;
    let options: Vec<Vec<Cell>> = node
        .m
        .iter()
        .zip(introduced)
        .map(|(&c, &intro)| if h >= intro { c.refine(h) } else { alloc::vec![c] })
        .collect();
    let mut choice = alloc::vec![0usize; options.len()];
    loop {
        let m: Vec<Cell> = choice.iter().enumerate().map(|(i, &j)| options[i][j]).collect();
        let weight = m.iter().zip(lambdas).map(|(c, &l)| c.probability(l)).product();
        let mut child = SpanningNode { m, height: h, weight, children: Vec::new() };
        grow(&mut child, lambdas, introduced, depth);
        node.children.push(child);
        // odometer, last coordinate fastest so children come out sorted by m
        let mut i = choice.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub max_defect: f64,
}

/// Checks that the root has weight 1 and every node's weight equals the sum
/// of its children's weights, within `tol`.
pub fn verify_hereditary_consistency(tree: &WeightedTree, tol: f64) -> ConsistencyReport {
    fn walk(n: &SpanningNode, worst: &mut f64) {
        if !n.children.is_empty() {
            let sum: f64 = n.children.iter().map(|c| c.weight).sum();
            *worst = worst.max((sum - n.weight).abs());
            for c in &n.children {
                walk(c, worst);
            }
        }
    }
    let mut worst = (tree.root.weight - 1.0).abs();
    walk(&tree.root, &mut worst);
    ConsistencyReport { consistent: worst <= tol, max_defect: worst }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    OnePoint,
    Countable,
    Cantor,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceKind::OnePoint => "one-point",
            SpaceKind::Countable => "countable",
            SpaceKind::Cantor => "cantor",
        })
    }
}

pub fn space_kind(regime: &Regime) -> Result<SpaceKind> {
    Ok(match regime {
        Regime::OutOfJ => return Err(Error::Domain("no space of completions outside J".into())),
        Regime::TreeWindow { .. } | Regime::MarkedWindow { .. } => SpaceKind::Countable,
        Regime::DoubleJump { .. } => SpaceKind::Cantor,
        _ => SpaceKind::OnePoint,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitPoints {
    One,
    CountablyMany,
}

/// In the tree window of order `l`: one limit point when there is a single
/// tree type of that order, countably many otherwise.
pub fn limit_point_count(d: usize, l: usize) -> Result<LimitPoints> {
    Ok(if enumerate_tree_types(d, l)?.len() == 1 { LimitPoints::One } else { LimitPoints::CountablyMany })
}

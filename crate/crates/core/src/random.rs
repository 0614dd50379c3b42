//! Samplers for `G^{d+1}(n, p)` and the Poisson branching Berge-trees.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};

use crate::error::{Error, Result};
use crate::math::{binomial, ln_factorial};
use crate::Hypergraph;

/// `(master, stream)` names one independent random stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Seed {
    pub master: u64,
    pub stream: u64,
}

impl Seed {
    pub fn new(master: u64, stream: u64) -> Self {
        Seed { master, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.stream);
        rng
    }
}

/// Largest number of edges a single sample may hold.
pub const MAX_SAMPLED_EDGES: u64 = 1 << 27;

/// Each `(d+1)`-subset of `0..n` is an edge independently with probability `p`.
///
/// The edge count is drawn from `Binomial(C(n, d+1), p)` and that many distinct
/// edges are then drawn uniformly by rank (the complement is drawn instead
/// when more than half of all subsets are present).
pub fn sample_gnp(n: usize, d: usize, p: f64, seed: Seed) -> Result<Hypergraph> {
    if d == 0 {
        return Err(Error::InvalidUniformity(d));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let k = d as u64 + 1;
    let total = binomial(n as u64, k).ok_or(Error::Overflow("number of potential edges"))?;
    let total: u64 = total
        .try_into()
        .map_err(|_| Error::LimitExceeded { what: "number of potential edges", limit: u64::MAX as u128 })?;
    if total == 0 || p == 0.0 {
        return Hypergraph::empty(n, d);
    }
    let mut rng = seed.rng();
    let m = if p == 1.0 {
        total
    } else {
        Binomial::new(total, p).map_err(|_| Error::InvalidProbability(p))?.sample(&mut rng)
    };
    if m > MAX_SAMPLED_EDGES {
        return Err(Error::LimitExceeded { what: "sampled edge count", limit: MAX_SAMPLED_EDGES as u128 });
    }
    let ranks = if m > total / 2 {
        let absent = distinct_ranks(total, total - m, &mut rng);
        let mut out = Vec::with_capacity(m as usize);
        let mut skip = absent.iter().peekable();
        for r in 0..total {
            if skip.peek() == Some(&&r) {
                skip.next();
            } else {
                out.push(r);
            }
        }
        out
    } else {
        distinct_ranks(total, m, &mut rng)
    };
    // Reflecting v to n-1-v turns descending colex order into ascending lex
    // order, so the edges come out sorted.
    let k = d + 1;
    let mut verts = vec![0u32; ranks.len() * k];
    let mut subset = vec![0u32; k];
    for (slot, &r) in verts.chunks_exact_mut(k).zip(ranks.iter().rev()) {
        unrank_into(r, n, &mut subset);
        for (out, &v) in slot.iter_mut().zip(subset.iter().rev()) {
            *out = (n - 1) as u32 - v;
        }
    }
    Ok(Hypergraph::from_flat(n, d, verts))
}

/// `m` distinct uniform values in `0..total`, sorted.
fn distinct_ranks<R: Rng>(total: u64, m: u64, rng: &mut R) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(m as usize);
    while (out.len() as u64) < m {
        let missing = m - out.len() as u64;
        out.extend((0..missing).map(|_| rng.random_range(0..total)));
        out.sort_unstable();
        out.dedup();
    }
    out
}

/// Writes the `rank`-th `out.len()`-subset of `0..n` in colexicographic
/// order, ascending.
fn unrank_into(mut rank: u64, n: usize, out: &mut [u32]) {
    let k = out.len();
    let mut hi = n as u64;
    for i in (0..k).rev() {
        let size = i as u64 + 1;
        let c = largest_fitting(rank, size, i as u64, hi - 1);
        out[i] = c as u32;
        rank -= binomial(c, size).expect("bounded by C(n, k)") as u64;
        hi = c;
    }
}

/// Largest `c` in `lo..=top` with `C(c, size) <= rank`, where `C(lo, size) <= rank`.
fn largest_fitting(rank: u64, size: u64, lo: u64, top: u64) -> u64 {
    let fits = |c: u64| binomial(c, size).is_some_and(|b| b <= u128::from(rank));
    if size == 1 {
        return rank.clamp(lo, top);
    }
    // C(c, k) is close to (c - (k-1)/2)^k / k!
    let ln_guess = (libm::log(rank as f64 + 1.0) + ln_factorial(size)) / size as f64;
    let guess = (libm::exp(ln_guess) + (size - 1) as f64 / 2.0) as u64;
    let mut c = guess.clamp(lo, top);
    for _ in 0..8 {
        if !fits(c) {
            c -= 1;
        } else if c < top && fits(c + 1) {
            c += 1;
        } else {
            return c;
        }
    }
    let (mut lo, mut top) = (lo, top);
    while lo < top {
        let mid = (lo + top).div_ceil(2);
        if fits(mid) {
            lo = mid;
        } else {
            top = mid - 1;
        }
    }
    lo
}

/// A Berge-tree with a distinguished root and the edge-hop depth of every
/// vertex. The root is vertex `0` and vertices are numbered breadth-first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedBergeTree {
    pub tree: Hypergraph,
    pub root: u32,
    pub depth: Vec<u32>,
}

/// Default cap on the number of vertices of a branching sample.
pub const DEFAULT_NODE_BUDGET: usize = 1 << 20;

/// `B(r, mu)`: every vertex at depth below `r` sprouts `Poisson(mu)` edges,
/// each bringing `d` fresh children one level deeper.
pub fn sample_poisson_tree(r: u32, mu: f64, d: usize, seed: Seed) -> Result<RootedBergeTree> {
    sample_poisson_tree_with_budget(r, mu, d, seed, DEFAULT_NODE_BUDGET)
}

pub fn sample_poisson_tree_with_budget(r: u32, mu: f64, d: usize, seed: Seed, budget: usize) -> Result<RootedBergeTree> {
    grow(r, mu, d, seed, budget, false)
}

/// The edge-rooted variant: the root carries exactly one forced edge and
/// every other vertex at depth below `r` sprouts `Poisson(mu)` further edges.
/// With `r = 0` the root stays isolated.
pub fn sample_poisson_tree_edge_rooted(r: u32, mu: f64, d: usize, seed: Seed) -> Result<RootedBergeTree> {
    sample_poisson_tree_edge_rooted_with_budget(r, mu, d, seed, DEFAULT_NODE_BUDGET)
}

pub fn sample_poisson_tree_edge_rooted_with_budget(
    r: u32,
    mu: f64,
    d: usize,
    seed: Seed,
    budget: usize,
) -> Result<RootedBergeTree> {
    grow(r, mu, d, seed, budget, true)
}

fn grow(r: u32, mu: f64, d: usize, seed: Seed, budget: usize, forced_root_edge: bool) -> Result<RootedBergeTree> {
    if d == 0 {
        return Err(Error::InvalidUniformity(d));
    }
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("branching mean must be finite and non-negative, got {mu}")));
    }
    let poisson = if mu > 0.0 { Some(Poisson::new(mu).map_err(|_| Error::InvalidParameter("branching mean".into()))?) } else { None };
    let mut rng = seed.rng();
    let mut depth = vec![0u32];
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        let dx = depth[x as usize];
        if dx >= r {
            continue;
        }
        let sprouts = if forced_root_edge && x == 0 {
            1
        } else {
            poisson.as_ref().map_or(0, |p| p.sample(&mut rng) as u64)
        };
        for _ in 0..sprouts {
            let first = depth.len();
            if first + d > budget {
                return Err(Error::LimitExceeded { what: "branching tree vertex count", limit: budget as u128 });
            }
            let mut edge = vec![x];
            for c in first..first + d {
                edge.push(c as u32);
                depth.push(dx + 1);
                queue.push_back(c as u32);
            }
            edges.push(edge);
        }
    }
    let tree = Hypergraph::from_edges_unchecked(depth.len(), d, edges);
    Ok(RootedBergeTree { tree, root: 0, depth })
}

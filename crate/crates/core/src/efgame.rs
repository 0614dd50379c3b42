//! The k-round Ehrenfeucht–Fraïssé game on finite uniform hypergraphs.
//!
//! Players pick vertices not chosen before. Duplicator must keep the chosen
//! correspondence a partial isomorphism: a `(d+1)`-set of chosen vertices is
//! an edge on one side iff its image is an edge on the other. When
//! `k > min(|H1|, |H2|)` the game cannot be played out, and Duplicator wins
//! iff the two hypergraphs are isomorphic.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameLimits {
    /// Most distinct positions memoized before giving up.
    pub max_states: usize,
}

impl Default for GameLimits {
    fn default() -> Self {
        GameLimits { max_states: 4_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A vertex picked by Spoiler in one of the two hypergraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpoilerMove {
    pub side: Side,
    pub vertex: u32,
}

fn same_uniformity(h1: &Hypergraph, h2: &Hypergraph) -> Result<()> {
    if h1.d() != h2.d() {
        return Err(Error::InvalidParameter("hypergraphs of different uniformity".into()));
    }
    Ok(())
}

pub fn duplicator_wins(h1: &Hypergraph, h2: &Hypergraph, k: usize) -> Result<bool> {
    duplicator_wins_with(h1, h2, k, GameLimits::default())
}

pub fn duplicator_wins_with(h1: &Hypergraph, h2: &Hypergraph, k: usize, limits: GameLimits) -> Result<bool> {
    same_uniformity(h1, h2)?;
    if k > h1.n().min(h2.n()) {
        return Ok(h1.is_isomorphic(h2));
    }
    Solver::new(h1, h2, k, limits).wins()
}

/// A first move with which Spoiler wins, or `None` when Duplicator wins.
/// Also `None` when `k` exceeds the smaller vertex count, since the winner
/// is then fixed by the isomorphism convention rather than by play.
pub fn spoiler_winning_move(h1: &Hypergraph, h2: &Hypergraph, k: usize) -> Result<Option<SpoilerMove>> {
    same_uniformity(h1, h2)?;
    if k == 0 || k > h1.n().min(h2.n()) {
        return Ok(None);
    }
    let mut solver = Solver::new(h1, h2, k, GameLimits::default());
    for side in [Side::Left, Side::Right] {
        let count = if side == Side::Left { h1.n() } else { h2.n() } as u32;
        for vertex in 0..count {
            if !solver.has_reply(side, vertex)? {
                return Ok(Some(SpoilerMove { side, vertex }));
            }
        }
    }
    Ok(None)
}

/// Least `k ≤ k_max` at which Spoiler wins.
pub fn distinguishing_depth(h1: &Hypergraph, h2: &Hypergraph, k_max: usize) -> Result<Option<usize>> {
    for k in 1..=k_max {
        if !duplicator_wins(h1, h2, k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

struct Solver<'a> {
    h1: &'a Hypergraph,
    h2: &'a Hypergraph,
    k: usize,
    /// Partner of each chosen vertex, `u32::MAX` when unchosen.
    map1: Vec<u32>,
    map2: Vec<u32>,
    pairs: Vec<(u32, u32)>,
    memo: HashMap<Vec<(u32, u32)>, bool>,
    limits: GameLimits,
}

impl<'a> Solver<'a> {
    fn new(h1: &'a Hypergraph, h2: &'a Hypergraph, k: usize, limits: GameLimits) -> Self {
        Solver {
            h1,
            h2,
            k,
            map1: vec![u32::MAX; h1.n()],
            map2: vec![u32::MAX; h2.n()],
            pairs: Vec::with_capacity(k),
            memo: HashMap::new(),
            limits,
        }
    }

    /// Whether adding `x ↦ y` keeps the correspondence a partial isomorphism.
    fn consistent(&self, x: u32, y: u32) -> bool {
        let forward = |from: &Hypergraph, to: &Hypergraph, v: u32, w: u32, map: &[u32]| {
            from.incident(v).iter().all(|&e| {
                let mut image = Vec::with_capacity(from.d() + 1);
                for &u in from.edge(e as usize) {
                    let t = if u == v { w } else { map[u as usize] };
                    if t == u32::MAX {
                        return true;
                    }
                    image.push(t);
                }
                image.sort_unstable();
                to.has_edge(&image)
            })
        };
        forward(self.h1, self.h2, x, y, &self.map1) && forward(self.h2, self.h1, y, x, &self.map2)
    }

    fn push(&mut self, x: u32, y: u32) {
        self.map1[x as usize] = y;
        self.map2[y as usize] = x;
        self.pairs.push((x, y));
    }

    fn pop(&mut self) {
        let (x, y) = self.pairs.pop().expect("non-empty position");
        self.map1[x as usize] = u32::MAX;
        self.map2[y as usize] = u32::MAX;
    }

    /// Whether Duplicator can answer Spoiler's `vertex` on `side` and still win.
    fn has_reply(&mut self, side: Side, vertex: u32) -> Result<bool> {
        let (own, other) = match side {
            Side::Left => (&self.map1, self.h2.n()),
            Side::Right => (&self.map2, self.h1.n()),
        };
        if own[vertex as usize] != u32::MAX {
            return Ok(true);
        }
        for reply in 0..other as u32 {
            let (x, y) = match side {
                Side::Left => (vertex, reply),
                Side::Right => (reply, vertex),
            };
            if self.map1[x as usize] != u32::MAX || self.map2[y as usize] != u32::MAX || !self.consistent(x, y) {
                continue;
            }
            self.push(x, y);
            let ok = self.wins();
            self.pop();
            if ok? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn wins(&mut self) -> Result<bool> {
        if self.pairs.len() == self.k {
            return Ok(true);
        }
        let mut key = self.pairs.clone();
        key.sort_unstable();
        if let Some(&w) = self.memo.get(&key) {
            return Ok(w);
        }
        if self.memo.len() >= self.limits.max_states {
            return Err(Error::LimitExceeded { what: "EF game positions", limit: self.limits.max_states as u128 });
        }
        let mut result = true;
        'outer: for side in [Side::Left, Side::Right] {
            let count = if side == Side::Left { self.h1.n() } else { self.h2.n() } as u32;
            for v in 0..count {
                if !self.has_reply(side, v)? {
                    result = false;
                    break 'outer;
                }
            }
        }
        self.memo.insert(key, result);
        Ok(result)
    }
}

/// Largest quantifier depth accepted by [`fo_equivalent_depth`].
pub const FO_MAX_DEPTH: usize = 3;
/// Largest vertex count accepted by [`fo_equivalent_depth`].
pub const FO_MAX_VERTICES: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum TypeKey {
    /// Equality pattern and edge atoms of a tuple.
    Atomic(Vec<u8>, Vec<bool>),
    /// Atomic type plus the set of types of all one-element extensions.
    Extended(u32, Vec<u32>),
}

/// Whether `h1` and `h2` satisfy the same first-order sentences of
/// quantifier depth at most `k`, decided by comparing rank-`k` types of the
/// empty tuple. Independent of the game solver.
pub fn fo_equivalent_depth(h1: &Hypergraph, h2: &Hypergraph, k: usize) -> Result<bool> {
    same_uniformity(h1, h2)?;
    if k > FO_MAX_DEPTH {
        return Err(Error::LimitExceeded { what: "quantifier depth", limit: FO_MAX_DEPTH as u128 });
    }
    if h1.n().max(h2.n()) > FO_MAX_VERTICES {
        return Err(Error::LimitExceeded { what: "vertex count for the first-order oracle", limit: FO_MAX_VERTICES as u128 });
    }
    let mut interner: HashMap<TypeKey, u32> = HashMap::new();
    let a = rank_type(h1, &mut Vec::new(), k, &mut interner);
    let b = rank_type(h2, &mut Vec::new(), k, &mut interner);
    Ok(a == b)
}

fn intern(interner: &mut HashMap<TypeKey, u32>, key: TypeKey) -> u32 {
    let next = interner.len() as u32;
    *interner.entry(key).or_insert(next)
}

fn atomic_type(h: &Hypergraph, tuple: &[u32], interner: &mut HashMap<TypeKey, u32>) -> u32 {
    let eq: Vec<u8> = tuple.iter().map(|a| tuple.iter().position(|b| b == a).expect("present") as u8).collect();
    let mut atoms = Vec::new();
    let arity = h.d() + 1;
    let mut idx: Vec<usize> = (0..arity).collect();
    if arity <= tuple.len() {
        loop {
            let mut set: Vec<u32> = idx.iter().map(|&i| tuple[i]).collect();
            set.sort_unstable();
            let distinct = set.windows(2).all(|w| w[0] < w[1]);
            atoms.push(distinct && h.has_edge(&set));
            // next position subset
            let mut i = arity;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < tuple.len() - arity + i {
                    idx[i] += 1;
                    for j in i + 1..arity {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    intern(interner, TypeKey::Atomic(eq, atoms))
}

fn rank_type(h: &Hypergraph, tuple: &mut Vec<u32>, k: usize, interner: &mut HashMap<TypeKey, u32>) -> u32 {
    let atomic = atomic_type(h, tuple, interner);
    if k == 0 {
        return atomic;
    }
    let mut children = Vec::with_capacity(h.n());
    for a in 0..h.n() as u32 {
        tuple.push(a);
        children.push(rank_type(h, tuple, k - 1, interner));
        tuple.pop();
    }
    children.sort_unstable();
    children.dedup();
    intern(interner, TypeKey::Extended(atomic, children))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[[u32; 2]]) -> Hypergraph {
        Hypergraph::build(n, 1, edges).unwrap()
    }

    #[test]
    fn examples() {
        let p3 = g(3, &[[0, 1], [1, 2]]);
        for k in 0..5 {
            assert!(duplicator_wins(&p3, &p3, k).unwrap());
        }
        let edge = g(2, &[[0, 1]]);
        let empty = Hypergraph::empty(2, 1).unwrap();
        assert!(!duplicator_wins(&edge, &empty, 2).unwrap());
        assert!(duplicator_wins(&edge, &empty, 1).unwrap());
        let five = Hypergraph::empty(5, 1).unwrap();
        let seven = Hypergraph::empty(7, 1).unwrap();
        assert!(duplicator_wins(&five, &seven, 5).unwrap());
        assert!(!duplicator_wins(&five, &seven, 7).unwrap());
        assert_eq!(distinguishing_depth(&edge, &empty, 4).unwrap(), Some(2));
        assert_eq!(distinguishing_depth(&p3, &p3, 3).unwrap(), None);
    }

    #[test]
    fn spoiler_move() {
        let edge = g(2, &[[0, 1]]);
        let empty = Hypergraph::empty(2, 1).unwrap();
        let m = spoiler_winning_move(&edge, &empty, 2).unwrap();
        assert!(m.is_some());
        assert_eq!(spoiler_winning_move(&edge, &edge, 2).unwrap(), None);
    }

    #[test]
    fn oracle_examples() {
        let edge = g(2, &[[0, 1]]);
        let empty = Hypergraph::empty(2, 1).unwrap();
        assert!(!fo_equivalent_depth(&edge, &empty, 2).unwrap());
        assert!(fo_equivalent_depth(&edge, &empty, 1).unwrap());
        assert!(fo_equivalent_depth(&edge, &edge, 3).unwrap());
        assert!(fo_equivalent_depth(&edge, &edge, 4).is_err());
    }

    #[test]
    fn state_cap() {
        let a = g(6, &[[0, 1], [1, 2], [2, 3], [3, 4], [4, 5]]);
        let b = g(6, &[[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0]]);
        let r = duplicator_wins_with(&a, &b, 4, GameLimits { max_states: 3 });
        assert!(matches!(r, Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn hypergraph_game() {
        let one = Hypergraph::build(4, 2, [[0, 1, 2]]).unwrap();
        let two = Hypergraph::build(4, 2, [[0, 1, 2], [1, 2, 3]]).unwrap();
        assert!(duplicator_wins(&one, &two, 2).unwrap());
        assert!(!duplicator_wins(&one, &two, 4).unwrap());
        assert_eq!(duplicator_wins(&one, &two, 3).unwrap(), fo_equivalent_depth(&one, &two, 3).unwrap());
    }
}

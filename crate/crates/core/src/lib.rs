//! Exact and statistical machinery for zero-one and convergence laws of the
//! binomial random (d+1)-uniform hypergraph `G^{d+1}(n, p)`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs (samplers take an explicit [`random::Seed`]), so
//! values can be shared freely between worker threads by the caller.
//!
//! Module map:
//!
//! * [`hypergraph`]: uniform hypergraphs, Berge-acyclicity, components, balls.
//! * [`berge`]: Berge-tree canonical codes, automorphisms, type enumeration,
//!   marked trees and copy counting.
//! * [`random`]: `G^{d+1}(n, p)` and Poisson branching Berge-trees.
//! * [`census`]: component, marked-copy, cycle and (r,s)-value statistics.
//! * [`pexpr`]: the edge-probability expression language and asymptotics.
//! * [`theory`]: closed-form predictors and the regime classifier.
//! * [`efgame`]: Ehrenfeucht–Fraïssé game solver and a first-order oracle.
//! * [`completions`]: weighted spanning trees for the space of completions.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod berge;
pub mod census;
pub mod completions;
pub mod efgame;
mod error;
pub mod hypergraph;
pub mod math;
pub mod pexpr;
pub mod random;
pub mod theory;

pub use error::{EdgeDefect, Error, Result};
pub use hypergraph::{Component, Hypergraph};

/// Exact rational used for exponents, thresholds and limit constants.
pub type Rational = num_rational::Ratio<i128>;

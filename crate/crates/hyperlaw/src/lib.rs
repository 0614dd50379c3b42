//! Std-side tooling for `hyperlaw-core`: text formats, Poisson goodness of
//! fit and reproducible Monte Carlo experiments.

pub mod experiment;
pub mod format;
pub mod stats;

pub use hyperlaw_core;

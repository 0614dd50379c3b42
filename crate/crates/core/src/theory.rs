//! Closed-form predictors: thresholds, Poisson means in the two windows,
//! first-moment expressions, the window parameters `ω` and `c`, the regime
//! classifier, and the exact value law of the Poisson branching tree.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::berge::{enumerate_marked_types, enumerate_tree_types};
use crate::census::{Pattern, Value};
use crate::error::{Error, Result};
use crate::math::{binomial, factorial, ln_binomial, ln_factorial, poisson_capped, poisson_pmf, Count};
use crate::pexpr::{compare, AsymptoticOrder, EdgeProbExpr, Limit};
use crate::Rational;

/// Exponent `(1 + l·d)/l` of the local threshold `n^{-(1+l·d)/l}` for
/// Berge-tree components of order `l`.
pub fn threshold_tree(d: usize, l: usize) -> Result<Rational> {
    if d == 0 {
        return Err(Error::InvalidUniformity(d));
    }
    if l == 0 {
        return Err(Error::InvalidParameter("order l must be at least 1".into()));
    }
    Ok(Rational::new(1 + (l * d) as i128, l as i128))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictionKind {
    TreeWindow,
    MarkedWindow,
    /// Means estimated from simulation rather than a closed form.
    Empirical,
}

impl fmt::Display for PredictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PredictionKind::TreeWindow => "tree-window",
            PredictionKind::MarkedWindow => "marked-window",
            PredictionKind::Empirical => "empirical",
        })
    }
}

/// Independent Poisson means keyed by canonical type code.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonPrediction {
    pub kind: PredictionKind,
    pub d: usize,
    pub l: usize,
    pub v_star: Option<usize>,
    /// The limit constant (`c` of the window).
    pub c: f64,
    /// `(code, λ)` sorted by code.
    pub means: Vec<(String, f64)>,
}

impl PoissonPrediction {
    pub fn lambdas(&self) -> Vec<f64> {
        self.means.iter().map(|(_, l)| *l).collect()
    }

    pub fn mean_of(&self, code: &str) -> Option<f64> {
        self.means.iter().find(|(k, _)| k == code).map(|(_, l)| *l)
    }

    /// Means supplied directly, e.g. estimated from a census.
    pub fn empirical(d: usize, means: Vec<(String, f64)>) -> Self {
        let mut means = means;
        means.sort_by(|a, b| a.0.cmp(&b.0));
        PoissonPrediction { kind: PredictionKind::Empirical, d, l: 0, v_star: None, c: f64::NAN, means }
    }
}

/// At `p ∼ c·n^{-(1+l·d)/l}` the counts of order-`l` tree components are
/// asymptotically independent Poisson with `λ_i = (c_i / v!)·c^l = c^l / a_i`.
pub fn poisson_means_tree_window(d: usize, l: usize, c: f64) -> Result<PoissonPrediction> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("limit constant must be positive, got {c}")));
    }
    let types = enumerate_tree_types(d, l)?;
    let v = (1 + l * d) as u64;
    let ln_vfact = ln_factorial(v);
    let means = types
        .iter()
        .map(|t| {
            let ln_ci = libm::log(t.labelled_count() as f64);
            (t.code.to_string(), libm::exp(ln_ci - ln_vfact + l as f64 * libm::log(c)))
        })
        .collect();
    Ok(PoissonPrediction { kind: PredictionKind::TreeWindow, d, l, v_star: None, c, means })
}

/// At `p = (d!/v*)(log n + l log log n + c(n))/n^d` with `c(n) → c` the
/// counts of copies of minimal `v*`-marked order-`l` types are asymptotically
/// independent Poisson with `λ_i = (c_i / v!)·(d!/v*)^l·e^{-c}`.
pub fn poisson_means_marked_window(d: usize, l: usize, v_star: usize, c: f64) -> Result<PoissonPrediction> {
    if v_star == 0 {
        return Err(Error::InvalidParameter("v* must be at least 1".into()));
    }
    if !c.is_finite() {
        return Err(Error::InvalidParameter(format!("limit constant must be finite, got {c}")));
    }
    let types = enumerate_marked_types(d, l, v_star, true)?;
    let v = (1 + l * d) as u64;
    let dfact = factorial(d as u64).ok_or(Error::Overflow("d!"))? as f64;
    let base = l as f64 * libm::log(dfact / v_star as f64) - c - ln_factorial(v);
    let means = types
        .iter()
        .map(|t| (t.code.to_string(), libm::exp(libm::log(t.labelled_count() as f64) + base)))
        .collect();
    Ok(PoissonPrediction { kind: PredictionKind::MarkedWindow, d, l, v_star: Some(v_star), c, means })
}

/// `E[C_t] = ½·C(n, t)·p^t·(t−1)!` for cycles of length `t` in `G(n, p)`.
pub fn expected_cycles_graph(n: u64, t: u64, p: f64) -> Result<f64> {
    if t < 3 {
        return Err(Error::InvalidParameter("graph cycles have length at least 3".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if t > n || p == 0.0 {
        return Ok(0.0);
    }
    // falling factorial n(n-1)...(n-t+1) / (2t) = C(n,t)(t-1)!/2
    let mut acc = 0.5 / t as f64;
    for i in 0..t {
        acc *= (n - i) as f64 * p;
    }
    Ok(acc)
}

/// First-moment asymptotics `(c/v!)·n^v·p^l·exp(−p·v*·n^d/d!)` of copies of a
/// marked type with labelled count `c`. This is the leading-order expression,
/// not an exact finite-`n` expectation.
pub fn expected_marked_trees(n: f64, d: usize, l: usize, v_star: usize, labelled: u128, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if p == 0.0 && l > 0 {
        return Ok(0.0);
    }
    let v = 1 + l * d;
    let dfact = factorial(d as u64).ok_or(Error::Overflow("d!"))? as f64;
    let edges = if l == 0 { 0.0 } else { l as f64 * libm::log(p) };
    let ln = libm::log(labelled as f64) - ln_factorial(v as u64) + v as f64 * libm::log(n) + edges
        - p * v_star as f64 * libm::pow(n, d as f64) / dfact;
    Ok(libm::exp(ln))
}

/// `n · P(Poisson(p·C(n−1, d)) = k)`, the Poisson surrogate for the expected
/// number of vertices of degree `k`.
pub fn expected_small_degree_vertices(n: u64, d: usize, p: f64, k: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let mean = match binomial(n - 1, d as u64) {
        Some(b) => p * b as f64,
        None => p * libm::exp(ln_binomial((n - 1) as f64, d as u64)),
    };
    Ok(n as f64 * poisson_pmf(mean, k))
}

/// Limits of `ω(n)` and, when `ω` has a finite limit `l`, of
/// `c(n) = p·n^d·v*/d! − log n − l·log log n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowLimits {
    pub d: usize,
    pub v_star: usize,
    pub omega: Limit,
    pub c: Option<Limit>,
}

fn window_scaled(p: &EdgeProbExpr, d: usize, v_star: usize) -> Result<EdgeProbExpr> {
    let dfact = factorial(d as u64).ok_or(Error::Overflow("d!"))? as i128;
    let scale = EdgeProbExpr::monomial(Rational::new(v_star as i128, dfact), Rational::from_integer(d as i128), Rational::zero(), Rational::zero());
    p.mul(&scale)
}

pub fn window_params_eval(p: &EdgeProbExpr, d: usize, v_star: usize) -> Result<WindowLimits> {
    if d == 0 {
        return Err(Error::InvalidUniformity(d));
    }
    if v_star == 0 {
        return Err(Error::InvalidParameter("v* must be at least 1".into()));
    }
    let q = window_scaled(p, d, v_star)?;
    if compare(&q, &EdgeProbExpr::log_n()) != AsymptoticOrder::Equivalent(Rational::one()) {
        return Err(Error::Domain(format!("p = {p} is not asymptotic to (d!/v*)·log(n)/n^d with d = {d}, v* = {v_star}")));
    }
    let excess = q.sub(&EdgeProbExpr::log_n())?;
    let omega = excess.div(&EdgeProbExpr::loglog_n())?.limit();
    let c = match omega {
        Limit::Finite(l) => Some(excess.sub(&EdgeProbExpr::loglog_n().scale(l)?)?.limit()),
        _ => None,
    };
    Ok(WindowLimits { d, v_star, omega, c })
}

/// Numeric `ω(n)` at a finite `n`.
pub fn omega_at(p: f64, n: f64, d: usize, v_star: usize) -> f64 {
    let dfact = factorial(d as u64).map_or(f64::INFINITY, |f| f as f64);
    let ln = libm::log(n);
    (v_star as f64 * libm::pow(n, d as f64) * p / dfact - ln) / libm::log(ln)
}

/// Numeric `c(n)` at a finite `n` for a given `l`.
pub fn c_at(p: f64, n: f64, d: usize, v_star: usize, l: usize) -> f64 {
    let dfact = factorial(d as u64).map_or(f64::INFINITY, |f| f as f64);
    let ln = libm::log(n);
    p * libm::pow(n, d as f64) * v_star as f64 / dfact - ln - l as f64 * libm::log(ln)
}

/// One clause of the classification of edge probabilities `p ≪ n^{-d+ε}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regime {
    /// (i)(a): `p ≪ n^{-(d+1)}`.
    Empty,
    /// (i)(b): `n^{-(1+l·d)/l} ≪ p ≪ n^{-(1+(l+1)·d)/(l+1)}`.
    BetweenTreeThresholds { l: usize },
    /// (i)(c): `n^{-(d+ε)} ≪ p ≪ n^{-d}` for every `ε > 0`.
    BelowDoubleJump,
    /// (i)(d): `n^{-d} ≪ p ≪ log n · n^{-d}`.
    AboveDoubleJump,
    /// (i)(e): `p ∼ C·log n / n^d` with `d!/(v*+1) < C < d!/v*`.
    MarkedGap { c: Rational, v_star: usize },
    /// (i)(f): `C = d!/v*` and `ω` diverges or tends to a non-integer
    /// (or negative) constant.
    OmegaOffLattice { v_star: usize, omega: Limit },
    /// (i)(g): `ω → l` and `c(n) → ±∞`.
    CDivergent { v_star: usize, l: usize, c: Limit },
    /// (i)(h): `log n · n^{-d} ≪ p ≪ n^{-d+ε}`. `c` carries the raw constant
    /// when `p ∼ C·log n / n^d` with `C > d!`.
    Dense { c: Option<Rational> },
    /// (ii)(a): `p ∼ c·n^{-(1+l·d)/l}`.
    TreeWindow { l: usize, c: Rational },
    /// (ii)(b): `p = (d!/v*)(log n + l·log log n + c(n))/n^d`, `c(n) → c`.
    MarkedWindow { v_star: usize, l: usize, c: Rational },
    /// (iii): `p ∼ λ/n^d`.
    DoubleJump { lambda: Rational },
    /// `p` is not `≪ n^{-d+ε}` for every `ε`.
    OutOfJ,
}

impl Regime {
    pub fn clause(&self) -> &'static str {
        match self {
            Regime::Empty => "(i)(a)",
            Regime::BetweenTreeThresholds { .. } => "(i)(b)",
            Regime::BelowDoubleJump => "(i)(c)",
            Regime::AboveDoubleJump => "(i)(d)",
            Regime::MarkedGap { .. } => "(i)(e)",
            Regime::OmegaOffLattice { .. } => "(i)(f)",
            Regime::CDivergent { .. } => "(i)(g)",
            Regime::Dense { .. } => "(i)(h)",
            Regime::TreeWindow { .. } => "(ii)(a)",
            Regime::MarkedWindow { .. } => "(ii)(b)",
            Regime::DoubleJump { .. } => "(iii)",
            Regime::OutOfJ => "out of J",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.clause())?;
        match self {
            Regime::BetweenTreeThresholds { l } => write!(f, " l={l}"),
            Regime::MarkedGap { c, v_star } => write!(f, " C={c} v*={v_star}"),
            Regime::OmegaOffLattice { v_star, omega } => write!(f, " v*={v_star} omega={omega}"),
            Regime::CDivergent { v_star, l, c } => write!(f, " v*={v_star} l={l} c={c}"),
            Regime::Dense { c: Some(c) } => write!(f, " C={c}"),
            Regime::TreeWindow { l, c } => write!(f, " l={l} c={c}"),
            Regime::MarkedWindow { v_star, l, c } => write!(f, " v*={v_star} l={l} c={c}"),
            Regime::DoubleJump { lambda } => write!(f, " lambda={lambda}"),
            _ => Ok(()),
        }
    }
}

/// Assigns `p` to exactly one clause.
///
/// Errors when `p` is eventually negative or eventually above 1.
pub fn classify_regime(p: &EdgeProbExpr, d: usize) -> Result<Regime> {
    if d == 0 {
        return Err(Error::InvalidUniformity(d));
    }
    let Some(top) = p.dominant() else {
        return Ok(Regime::Empty);
    };
    if top.coef.is_negative() {
        return Err(Error::Domain(format!("p = {p} is eventually negative")));
    }
    let one = Rational::one();
    match p.limit() {
        Limit::PosInf => return Err(Error::Domain(format!("p = {p} is eventually above 1"))),
        Limit::Finite(x) if x > one => return Err(Error::Domain(format!("p = {p} is eventually above 1"))),
        Limit::Finite(x) if x == one && p.terms().get(1).is_some_and(|t| t.coef.is_positive()) => {
            return Err(Error::Domain(format!("p = {p} is eventually above 1")));
        }
        _ => {}
    }
    let d_q = Rational::from_integer(d as i128);
    let alpha = -top.n_exp;
    let zero = Rational::zero();
    let logs = (top.log_exp, top.loglog_exp);
    if alpha < d_q {
        return Ok(Regime::OutOfJ);
    }
    if alpha > d_q {
        let x = alpha - d_q;
        if x > one {
            return Ok(Regime::Empty);
        }
        let inv = x.recip();
        if inv.is_integer() {
            let l = inv.to_integer() as usize;
            return Ok(match logs.cmp(&(zero, zero)) {
                core::cmp::Ordering::Equal => Regime::TreeWindow { l, c: top.coef },
                core::cmp::Ordering::Greater => Regime::BetweenTreeThresholds { l },
                core::cmp::Ordering::Less if l == 1 => Regime::Empty,
                core::cmp::Ordering::Less => Regime::BetweenTreeThresholds { l: l - 1 },
            });
        }
        let l = inv.floor().to_integer().to_usize().ok_or(Error::Overflow("tree order"))?;
        return Ok(Regime::BetweenTreeThresholds { l });
    }
    // alpha == d
    let (b, c) = logs;
    if b.is_zero() && c.is_zero() {
        Ok(Regime::DoubleJump { lambda: top.coef })
    } else if b < zero || (b.is_zero() && c < zero) {
        Ok(Regime::BelowDoubleJump)
    } else if b < one || (b == one && c < zero) {
        Ok(Regime::AboveDoubleJump)
    } else if b == one && c.is_zero() {
        classify_log_window(p, d, top.coef)
    } else {
        Ok(Regime::Dense { c: None })
    }
}

fn classify_log_window(p: &EdgeProbExpr, d: usize, c: Rational) -> Result<Regime> {
    let dfact = Rational::from_integer(factorial(d as u64).ok_or(Error::Overflow("d!"))? as i128);
    if c > dfact {
        return Ok(Regime::Dense { c: Some(c) });
    }
    let ratio = dfact / c;
    let v_star = ratio.floor().to_integer().to_usize().ok_or(Error::Overflow("v*"))?;
    if !ratio.is_integer() {
        return Ok(Regime::MarkedGap { c, v_star });
    }
    let limits = window_params_eval(p, d, v_star)?;
    Ok(match (limits.omega, limits.c) {
        (Limit::Finite(l), Some(c_lim)) if l.is_integer() && !l.is_negative() => {
            let l = l.to_integer().to_usize().ok_or(Error::Overflow("l"))?;
            match c_lim {
                Limit::Finite(c) => Regime::MarkedWindow { v_star, l, c },
                c => Regime::CDivergent { v_star, l, c },
            }
        }
        (omega, _) => Regime::OmegaOffLattice { v_star, omega },
    })
}

/// `lim P[σ_m] = Π_i P(Poisson(λ_i) = m_i)`, with `MANY` contributing the
/// upper tail `P(X ≥ s+1)`.
pub fn sigma_limit_probability(m: &[Count], lambdas: &[f64], s: u32) -> Result<f64> {
    if m.len() != lambdas.len() {
        return Err(Error::InvalidParameter(format!("{} counts for {} means", m.len(), lambdas.len())));
    }
    Ok(m.iter().zip(lambdas).map(|(&k, &l)| poisson_capped(l, k, s)).product())
}

/// Default cap on the number of values enumerated at any one depth.
pub const DEFAULT_VALUE_LIMIT: usize = 1 << 20;

/// Law of the `(r, s)`-value of the root of `B(r, μ)` in product form: the
/// number of root edges of each pattern `Δ` is an independent capped
/// `Poisson(μ·p_Δ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueLaw {
    pub r: u32,
    pub s: u32,
    /// `(Δ, μ·p_Δ)` for every pattern of positive probability.
    pub factors: Vec<(Pattern, f64)>,
}

impl ValueLaw {
    pub fn probability(&self, v: &Value) -> f64 {
        if v.r() != self.r || v.s() != self.s {
            return 0.0;
        }
        if self.r == 0 {
            return 1.0;
        }
        if v.patterns().any(|(p, _)| !self.factors.iter().any(|(q, _)| q == p)) {
            return 0.0;
        }
        self.factors.iter().map(|(p, mean)| poisson_capped(*mean, v.count(p), self.s)).product()
    }

    /// `Σ_Γ p_Γ`, summed factor by factor.
    pub fn total_mass(&self) -> f64 {
        self.factors
            .iter()
            .map(|(_, mean)| Count::alphabet(self.s).map(|c| poisson_capped(*mean, c, self.s)).sum::<f64>())
            .product()
    }

    /// Number of values with positive probability, if it fits in `u128`.
    pub fn support_size(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, (_, mean)| {
            let k = if *mean > 0.0 { u128::from(self.s) + 2 } else { 1 };
            acc.checked_mul(k)
        })
    }

    /// Every value of positive probability with its probability.
    pub fn enumerate(&self, limit: usize) -> Result<BTreeMap<Value, f64>> {
        if self.r == 0 {
            return Ok(BTreeMap::from([(Value::trivial(self.s), 1.0)]));
        }
        match self.support_size() {
            Some(k) if k <= limit as u128 => {}
            _ => return Err(Error::LimitExceeded { what: "number of (r,s)-values", limit: limit as u128 }),
        }
        let options: Vec<Vec<(Count, f64)>> = self
            .factors
            .iter()
            .map(|(_, mean)| {
                Count::alphabet(self.s)
                    .map(|c| (c, poisson_capped(*mean, c, self.s)))
                    .filter(|(_, pr)| *pr > 0.0)
                    .collect()
            })
            .collect();
        let mut out = BTreeMap::new();
        let mut choice = alloc::vec![0usize; options.len()];
        loop {
            let mut pr = 1.0;
            let mut counts = Vec::with_capacity(options.len());
            for (i, &j) in choice.iter().enumerate() {
                let (c, q) = options[i][j];
                pr *= q;
                counts.push((self.factors[i].0.clone(), c));
            }
            out.insert(Value::from_counts(self.r, self.s, counts)?, pr);
            // odometer
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return Ok(out);
                }
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

/// The exact law of the root value of `B(r, μ)` for `(d+1)`-uniform trees,
/// in product form. Depths below `r` are enumerated explicitly and must stay
/// within `limit` values each.
pub fn branching_value_law(r: u32, s: u32, mu: f64, d: usize, limit: usize) -> Result<ValueLaw> {
    if d == 0 {
        return Err(Error::InvalidUniformity(d));
    }
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::InvalidParameter(format!("branching mean must be finite and non-negative, got {mu}")));
    }
    let mut below: BTreeMap<Value, f64> = BTreeMap::from([(Value::trivial(s), 1.0)]);
    let mut law = ValueLaw { r: 0, s, factors: Vec::new() };
    for depth in 1..=r {
        let patterns = pattern_law(&below, d, limit)?;
        law = ValueLaw { r: depth, s, factors: patterns.into_iter().map(|(p, pr)| (p, mu * pr)).collect() };
        if depth < r {
            // refuse before materializing a level whose patterns would not fit
            let next_patterns = law
                .support_size()
                .and_then(|k| u64::try_from(k + d as u128 - 1).ok())
                .and_then(|k| binomial(k, d as u64));
            if next_patterns.is_none_or(|c| c > limit as u128) {
                return Err(Error::LimitExceeded { what: "number of (r,s)-patterns", limit: limit as u128 });
            }
            below = law.enumerate(limit)?;
        }
    }
    Ok(law)
}

/// Enumerated law of the root value of `B(r, μ)`.
pub fn branching_value_distribution(r: u32, s: u32, mu: f64, d: usize) -> Result<BTreeMap<Value, f64>> {
    branching_value_law(r, s, mu, d, DEFAULT_VALUE_LIMIT)?.enumerate(DEFAULT_VALUE_LIMIT)
}

/// Multisets of `d` i.i.d. draws from `values` with multinomial weights.
fn pattern_law(values: &BTreeMap<Value, f64>, d: usize, limit: usize) -> Result<Vec<(Pattern, f64)>> {
    let items: Vec<(&Value, f64)> = values.iter().map(|(v, &p)| (v, p)).filter(|(_, p)| *p > 0.0).collect();
    let count = binomial((items.len() + d - 1) as u64, d as u64);
    if count.is_none_or(|c| c > limit as u128) {
        return Err(Error::LimitExceeded { what: "number of (r,s)-patterns", limit: limit as u128 });
    }
    let ln_dfact = ln_factorial(d as u64);
    let mut out = Vec::new();
    let mut idx = alloc::vec![0usize; d];
    loop {
        let mut ln_p = ln_dfact;
        let mut run = 0u64;
        for i in 0..d {
            run = if i > 0 && idx[i] == idx[i - 1] { run + 1 } else { 1 };
            ln_p += libm::log(items[idx[i]].1) - libm::log(run as f64);
        }
        out.push((Pattern::new(idx.iter().map(|&i| items[i].0.clone())), libm::exp(ln_p)));
        // next nondecreasing index tuple
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if idx[i] + 1 < items.len() {
                let v = idx[i] + 1;
                for slot in &mut idx[i..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// `(l, c)` of a tree window as `f64`, for numeric use.
pub fn rational_to_f64(q: &Rational) -> f64 {
    crate::pexpr::to_f64(q)
}

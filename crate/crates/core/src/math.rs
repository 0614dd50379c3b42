//! Small numeric helpers shared by the predictors and samplers.

use core::fmt;

/// An element of the truncated count alphabet `{0, 1, ..., s, MANY}`.
///
/// `Many` stands for "at least s + 1"; the cap `s` is carried by the context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Exactly(u32),
    Many,
}

impl Count {
    /// Truncates a genuine count at cap `s`.
    pub fn capped(k: u64, s: u32) -> Count {
        if k > u64::from(s) {
            Count::Many
        } else {
            Count::Exactly(k as u32)
        }
    }

    /// The same event viewed under a smaller cap `s`.
    pub fn recap(self, s: u32) -> Count {
        match self {
            Count::Exactly(k) => Count::capped(u64::from(k), s),
            Count::Many => Count::Many,
        }
    }

    /// Every element of `{0, ..., s, MANY}` in increasing order.
    pub fn alphabet(s: u32) -> impl Iterator<Item = Count> + Clone {
        (0..=s).map(Count::Exactly).chain(core::iter::once(Count::Many))
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Exactly(k) => write!(f, "{k}"),
            Count::Many => f.write_str("M"),
        }
    }
}

/// `n choose k` in 128-bit arithmetic, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

pub fn factorial(k: u64) -> Option<u128> {
    (1..=u128::from(k)).try_fold(1u128, |acc, i| acc.checked_mul(i))
}

pub fn ln_factorial(k: u64) -> f64 {
    if k < 2 {
        0.0
    } else {
        libm::lgamma(k as f64 + 1.0)
    }
}

/// `ln C(n, k)` for real-valued sizes that may not fit an integer.
pub fn ln_binomial(n: f64, k: u64) -> f64 {
    if (k as f64) > n {
        return f64::NEG_INFINITY;
    }
    libm::lgamma(n + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma(n - k as f64 + 1.0)
}

pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    if lambda == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    libm::exp(k as f64 * libm::log(lambda) - lambda - ln_factorial(k))
}

/// `P(X >= s + 1)` for `X ~ Poisson(lambda)`, computed as `1 - P(X <= s)`
/// so that pmf and tail add up to one.
pub fn poisson_tail(lambda: f64, s: u32) -> f64 {
    let head: f64 = (0..=u64::from(s)).map(|k| poisson_pmf(lambda, k)).sum();
    (1.0 - head).max(0.0)
}

/// Probability of a truncated count under `Poisson(lambda)` with cap `s`.
pub fn poisson_capped(lambda: f64, count: Count, s: u32) -> f64 {
    match count {
        Count::Exactly(k) if k <= s => poisson_pmf(lambda, u64::from(k)),
        Count::Exactly(_) => 0.0,
        Count::Many => poisson_tail(lambda, s),
    }
}

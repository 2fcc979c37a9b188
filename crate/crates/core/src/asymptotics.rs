//! Large-intensity behaviour of the Shannon entropy derivative.
//!
//! For `lambda > 1` write `H_S'(lambda) = ln(lambda) * (T(lambda) - 1)` with
//! `T(lambda) = sum_{k>=1} p_k ln(k+1) / ln(lambda)`. Splitting the sum at
//! `m = floor(lambda / 2)` into a head `S_1` and a tail `S_2`, the head
//! vanishes (via two-sided Stirling bounds) and the tail is at least
//! `ln(m+1) / ln(lambda)` times the Poisson mass above `m`.

use std::f64::consts::{E, PI};

use crate::entropy::{shannon_prime, EntropyValue};
use crate::error::{Error, Result};
use crate::poisson::{log_pmf, upper_tail, Intensity};
use crate::series::{Precision, ScaledSum};

/// Intensity above which [`s1_upper_bound`] applies.
pub const S1_BOUND_THRESHOLD: f64 = 42.0;

/// `ln` of the two-sided bounds
/// `sqrt(2 pi n) (n/e)^n e^{1/(12n+1)} < n! < sqrt(2 pi n) (n/e)^n e^{1/(12n)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirlingBounds {
    pub ln_lower: f64,
    pub ln_upper: f64,
}

impl StirlingBounds {
    pub fn lower(&self) -> f64 {
        self.ln_lower.exp()
    }

    pub fn upper(&self) -> f64 {
        self.ln_upper.exp()
    }

    /// Upper over lower, `e^{1/(12n) - 1/(12n+1)}`.
    pub fn ratio(&self) -> f64 {
        (self.ln_upper - self.ln_lower).exp()
    }
}

pub fn stirling_bounds(n: u64) -> Result<StirlingBounds> {
    if n <= 1 {
        return Err(Error::OutOfDomain {
            what: "stirling_bounds",
            requirement: "n > 1",
            got: n as f64,
        });
    }
    let x = n as f64;
    let base = 0.5 * (2.0 * PI * x).ln() + x * (x.ln() - 1.0);
    Ok(StirlingBounds {
        ln_lower: base + 1.0 / (12.0 * x + 1.0),
        ln_upper: base + 1.0 / (12.0 * x),
    })
}

fn require_above(what: &'static str, requirement: &'static str, lambda: Intensity, lo: f64) -> Result<f64> {
    let l = lambda.get();
    if l > lo {
        Ok(l)
    } else {
        Err(Error::OutOfDomain {
            what,
            requirement,
            got: l,
        })
    }
}

/// `m = floor(lambda / 2)`. Halving is exact in binary64, so even integers
/// land exactly on `lambda / 2`.
pub fn split_index(lambda: Intensity) -> u64 {
    (lambda.get() / 2.0).floor() as u64
}

/// `T(lambda) = sum_{k>=1} p_k ln(k+1) / ln(lambda) = 1 + H_S'(lambda) / ln(lambda)`,
/// which exceeds one exactly when the Shannon entropy is increasing. The
/// derivative is evaluated tightly enough that the returned tail bound is
/// still within `eps` after division by `ln(lambda)`.
pub fn entropy_prime_statistic(lambda: Intensity, precision: impl Into<Precision>) -> Result<EntropyValue> {
    let l = require_above("entropy_prime_statistic", "lambda > 1", lambda, 1.0)?;
    let precision = precision.into().validated()?;
    let ln_l = l.ln();
    let inner = Precision {
        eps: precision.eps * ln_l.min(1.0),
        ..precision
    };
    let d = shannon_prime(lambda, inner)?;
    Ok(EntropyValue {
        value: 1.0 + d.value / ln_l,
        tail_bound: d.tail_bound / ln_l,
        series: d.series,
    })
}

/// `(2.1/e)^m sqrt(m) / (sqrt(2 pi) e^{1/(12m+1)})` with `m = floor(lambda/2)`,
/// an upper bound on [`head_sum_scaled`] once `lambda > 42` (where
/// `m >= lambda / 2.1`).
pub fn s1_upper_bound(lambda: Intensity) -> Result<f64> {
    require_above("s1_upper_bound", "lambda > 42", lambda, S1_BOUND_THRESHOLD)?;
    let m = split_index(lambda) as f64;
    let ln = m * (2.1f64.ln() - 1.0) + 0.5 * m.ln() - 0.5 * (2.0 * PI).ln() - 1.0 / (12.0 * m + 1.0);
    Ok(ln.exp())
}

/// `e^{-lambda} S_1(lambda) / ln(lambda)` with
/// `S_1 = sum_{k=1}^{m} lambda^k ln(k+1) / k!`, summed directly.
pub fn head_sum_scaled(lambda: Intensity) -> Result<f64> {
    let l = require_above("head_sum_scaled", "lambda > 1", lambda, 1.0)?;
    let m = split_index(lambda);
    let terms: Vec<(f64, f64)> = (1..=m)
        .map(|k| (log_pmf(lambda, k), ((k + 1) as f64).ln()))
        .collect();
    Ok(ScaledSum::from_terms(&terms).value() / l.ln())
}

/// `1 - e^{-lambda} sum_{k=0}^{m} lambda^k / k!`, the Poisson mass above
/// `m = floor(lambda/2)`, summed directly.
pub fn tail_fraction(lambda: Intensity) -> f64 {
    upper_tail(lambda, split_index(lambda))
}

/// Every quantity of the split at one intensity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticReport {
    pub lambda: f64,
    pub split_index: u64,
    pub statistic: f64,
    pub head: f64,
    /// Only defined for `lambda > 42`.
    pub s1_bound: Option<f64>,
    pub tail_fraction: f64,
    /// `ln(m+1) / ln(lambda) * tail_fraction`, a lower bound on the tail part
    /// of the statistic and hence on the statistic itself.
    pub tail_lower_bound: f64,
}

impl AsymptoticReport {
    pub fn new(lambda: Intensity, precision: impl Into<Precision>) -> Result<Self> {
        let l = lambda.get();
        let statistic = entropy_prime_statistic(lambda, precision)?.value;
        let m = split_index(lambda);
        let tail_fraction = tail_fraction(lambda);
        Ok(Self {
            lambda: l,
            split_index: m,
            statistic,
            head: head_sum_scaled(lambda)?,
            s1_bound: (l > S1_BOUND_THRESHOLD).then(|| s1_upper_bound(lambda)).transpose()?,
            tail_fraction,
            tail_lower_bound: ((m + 1) as f64).ln() / l.ln() * tail_fraction,
        })
    }

    /// `statistic >= tail_lower_bound` and, where defined, `head <= s1_bound`.
    pub fn chain_holds(&self) -> bool {
        self.statistic >= self.tail_lower_bound && self.s1_bound.is_none_or(|b| self.head <= b)
    }
}

/// `2.1 / e`, the geometric rate at which the head bound vanishes.
pub fn head_decay_rate() -> f64 {
    2.1 / E
}

//! Shannon and Renyi entropies of the Poisson law as functions of the
//! intensity, with every infinite series cut at a certified index.
//!
//! All tails are bounded the same way: past `ceil(2 lambda)` the pmf ratio
//! `lambda / (k + 1)` is below 1/2, so each series is dominated by a
//! geometric one whose ratio is evaluated at the first omitted term and
//! decreases from there on. Entropies are in nats.

use crate::error::{Error, Result};
use crate::poisson::{log_pmf, mode, Intensity};
use crate::series::{first_certified_index, twice_ceil, CompensatedSum, Precision, ScaledSum, SeriesValue};
use crate::special::log_factorial;

/// Orders with `|alpha - 1|` below this are evaluated as Shannon entropy.
pub const NEAR_ONE_BAND: f64 = 1e-6;

/// Renyi order `alpha > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RenyiOrder(f64);

impl RenyiOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidOrder(alpha))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// Inside the band where `1 / (1 - alpha)` would amplify rounding noise.
    pub fn is_near_one(self) -> bool {
        (self.0 - 1.0).abs() < NEAR_ONE_BAND
    }
}

impl TryFrom<f64> for RenyiOrder {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

/// An entropy (or entropy derivative) value with its truncation record.
///
/// `tail_bound` bounds `|value - exact|` from truncation alone. `series` is
/// the underlying sum that was truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    pub tail_bound: f64,
    pub series: SeriesValue,
}

struct Truncated {
    sum: ScaledSum,
    index: u64,
    tail: f64,
}

/// Sums `terms(k)` for `k = first..=n`, where `n` is the first index at or
/// past `start` whose `bound` is within tolerance.
fn truncated_series(
    precision: Precision,
    start: u64,
    first: u64,
    bound: impl Fn(u64) -> f64,
    term: impl Fn(u64) -> (f64, f64),
) -> Result<Truncated> {
    let (index, tail) = first_certified_index(start, precision, bound)?;
    let terms: Vec<(f64, f64)> = (first..=index).map(term).collect();
    Ok(Truncated {
        sum: ScaledSum::from_terms(&terms),
        index,
        tail,
    })
}

/// Geometric tail `first / (1 - ratio)`, infinite when the ratio is not
/// below one.
fn geometric(first: f64, ratio: f64) -> f64 {
    if ratio < 1.0 {
        first / (1.0 - ratio)
    } else {
        f64::INFINITY
    }
}

fn entropy_value(head: f64, t: Truncated) -> EntropyValue {
    let sum = t.sum.value();
    let mut acc = CompensatedSum::new();
    acc.add(head);
    acc.add(sum);
    EntropyValue {
        value: acc.value(),
        tail_bound: t.tail,
        series: SeriesValue {
            value: sum,
            truncation_index: t.index,
            tail_bound: t.tail,
        },
    }
}

/// `H_S(lambda) = lambda (1 - ln lambda) + sum_{k>=2} p_k ln k!`.
///
/// Tail certificate: `ln k! <= k ln k`, and the terms `p_k k ln k` have
/// ratio `lambda ln(k+1) / (k ln k)`, which decreases in `k` and is below
/// one once `k >= max(2 lambda, 3)`.
pub fn shannon_entropy(lambda: Intensity, precision: impl Into<Precision>) -> Result<EntropyValue> {
    let precision = precision.into().validated()?;
    let l = lambda.get();
    let bound = |n: u64| {
        let k = (n + 1) as f64;
        let first = log_pmf(lambda, n + 1).exp() * k * k.ln();
        geometric(first, l * (k + 1.0).ln() / (k * k.ln()))
    };
    let t = truncated_series(precision, twice_ceil(l).max(2), 2, bound, |k| {
        (log_pmf(lambda, k), log_factorial(k))
    })?;
    Ok(entropy_value(l * (1.0 - l.ln()), t))
}

/// `H_S'(lambda) = -ln lambda + sum_{k>=1} p_k ln(k+1)`.
pub fn shannon_prime(lambda: Intensity, precision: impl Into<Precision>) -> Result<EntropyValue> {
    let precision = precision.into().validated()?;
    let l = lambda.get();
    let bound = |n: u64| {
        let k = (n + 1) as f64;
        let first = log_pmf(lambda, n + 1).exp() * (k + 1.0).ln();
        geometric(first, l * (k + 2.0).ln() / ((k + 1.0) * (k + 1.0).ln()))
    };
    let t = truncated_series(precision, twice_ceil(l).max(1), 1, bound, |k| {
        (log_pmf(lambda, k), ((k + 1) as f64).ln())
    })?;
    Ok(entropy_value(-l.ln(), t))
}

/// `H_S''(lambda) = -1/lambda + sum_{k>=0} p_k ln(1 + 1/(k+1))`.
pub fn shannon_second(lambda: Intensity, precision: impl Into<Precision>) -> Result<EntropyValue> {
    let precision = precision.into().validated()?;
    let l = lambda.get();
    let bound = |n: u64| {
        let k = (n + 1) as f64;
        let first = log_pmf(lambda, n + 1).exp() * (1.0 / (k + 1.0)).ln_1p();
        geometric(first, l / (k + 1.0))
    };
    let t = truncated_series(precision, twice_ceil(l), 0, bound, |k| {
        (log_pmf(lambda, k), (1.0 / (k + 1) as f64).ln_1p())
    })?;
    Ok(entropy_value(-1.0 / l, t))
}

/// Certified bound on `sum_{k>n} p_k^alpha`.
fn psi_tail(lambda: Intensity, alpha: f64, n: u64) -> f64 {
    let k = (n + 1) as f64;
    let first = (alpha * log_pmf(lambda, n + 1)).exp();
    geometric(first, (lambda.get() / (k + 1.0)).powf(alpha))
}

/// `psi(alpha, lambda) = sum_k p_k^alpha`.
pub fn psi(alpha: RenyiOrder, lambda: Intensity, precision: impl Into<Precision>) -> Result<SeriesValue> {
    let precision = precision.into().validated()?;
    let a = alpha.get();
    let t = truncated_series(
        precision,
        twice_ceil(lambda.get()),
        0,
        |n| psi_tail(lambda, a, n),
        |k| (a * log_pmf(lambda, k), 1.0),
    )?;
    Ok(SeriesValue {
        value: t.sum.value(),
        truncation_index: t.index,
        tail_bound: t.tail,
    })
}

/// `H_R^alpha(lambda) = ln psi(alpha, lambda) / (1 - alpha)`, or the Shannon
/// entropy inside the near-one band.
///
/// `psi - 1` is summed as `sum_k p_k expm1((alpha - 1) ln p_k)`, which is
/// exact because the pmf sums to one and avoids forming `psi` next to 1.
/// The reported `series` is that `psi - 1` sum.
pub fn renyi_entropy(
    alpha: RenyiOrder,
    lambda: Intensity,
    precision: impl Into<Precision>,
) -> Result<EntropyValue> {
    let precision = precision.into().validated()?;
    if alpha.is_near_one() {
        return shannon_entropy(lambda, precision);
    }
    let a = alpha.get();
    let gap = (1.0 - a).abs();
    // psi is at least its largest term
    let psi_floor = (a * log_pmf(lambda, mode(lambda))).exp();
    let inner = Precision {
        eps: (precision.eps * gap * psi_floor).max(f64::MIN_POSITIVE),
        ..precision
    };
    let t = truncated_series(
        inner,
        twice_ceil(lambda.get()),
        0,
        |n| psi_tail(lambda, a, n) + psi_tail(lambda, 1.0, n),
        |k| {
            let lp = log_pmf(lambda, k);
            (lp, ((a - 1.0) * lp).exp_m1())
        },
    )?;
    let psi_minus_one = t.sum.value();
    let value = psi_minus_one.ln_1p() / (1.0 - a);
    Ok(EntropyValue {
        value,
        tail_bound: t.tail / (gap * psi_floor),
        series: SeriesValue {
            value: psi_minus_one,
            truncation_index: t.index,
            tail_bound: t.tail,
        },
    })
}

/// `R(alpha, lambda) = sum_k (k - lambda) lambda^{alpha k - 1} / (k!)^alpha`.
///
/// Regrouped as `e^{alpha lambda} sum_k p_k^alpha expm1((alpha - 1) ln(lambda / (k+1)))`,
/// which shifts `k p_k^alpha` down one index. The regrouped terms vanish
/// identically at `alpha = 1`. Its tail is bounded through
/// `sum_{k>n} (k + lambda) p_k^alpha`, scaled back by `e^{alpha lambda} / lambda`.
pub fn r_statistic(
    alpha: RenyiOrder,
    lambda: Intensity,
    precision: impl Into<Precision>,
) -> Result<SeriesValue> {
    let precision = precision.into().validated()?;
    let a = alpha.get();
    let l = lambda.get();
    let log_scale = a * l;
    let bound = |n: u64| {
        let k = (n + 1) as f64;
        let ratio = (1.0 + 1.0 / (k + l)) * (l / (k + 1.0)).powf(a);
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        let log_first = a * log_pmf(lambda, n + 1) + (k + l).ln() + log_scale - l.ln();
        log_first.exp() / (1.0 - ratio)
    };
    let t = truncated_series(precision, twice_ceil(l), 0, bound, |k| {
        let shrink = (l / (k + 1) as f64).ln();
        (a * log_pmf(lambda, k), ((a - 1.0) * shrink).exp_m1())
    })?;
    let value = t.sum.scaled(log_scale);
    if !value.is_finite() {
        return Err(Error::Overflow("R(alpha, lambda)"));
    }
    Ok(SeriesValue {
        value,
        truncation_index: t.index,
        tail_bound: t.tail,
    })
}

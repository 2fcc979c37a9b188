//! Poisson pmf in log-space, window sums and certified tail bounds.

use crate::error::{Error, Result};
use crate::series::{first_certified_index, twice_ceil, Precision, ScaledSum};
use crate::special::{deviance, half_ln_2pi, stirling_remainder};

/// Largest intensity accepted by [`Intensity::new`].
pub const DEFAULT_MAX_INTENSITY: f64 = 1e4;

/// The Poisson parameter, a strictly positive real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Intensity(f64);

impl Intensity {
    pub fn new(lambda: f64) -> Result<Self> {
        Self::with_max(lambda, DEFAULT_MAX_INTENSITY)
    }

    pub fn with_max(lambda: f64, max: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidIntensity(lambda));
        }
        if lambda > max {
            return Err(Error::IntensityTooLarge { lambda, max });
        }
        Ok(Self(lambda))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Intensity {
    type Error = Error;

    fn try_from(lambda: f64) -> Result<Self> {
        Self::new(lambda)
    }
}

/// `ln P{X = k}` for `X ~ Poisson(lambda)`.
///
/// Evaluated through the saddle-point split
/// `-stirling_remainder(k) - deviance(k, lambda) - ln sqrt(2 pi k)`, which is
/// algebraically `k ln lambda - lambda - ln k!` but never forms the large,
/// mutually cancelling terms `k ln lambda` and `ln k!`.
pub fn log_pmf(lambda: Intensity, k: u64) -> f64 {
    let lambda = lambda.get();
    if k == 0 {
        return -lambda;
    }
    let x = k as f64;
    -stirling_remainder(k) - deviance(x, lambda) - half_ln_2pi(x)
}

pub fn pmf(lambda: Intensity, k: u64) -> f64 {
    log_pmf(lambda, k).exp()
}

/// Index of the largest pmf term (the smaller one on ties).
pub fn mode(lambda: Intensity) -> u64 {
    let l = lambda.get();
    let f = l.floor();
    if f == l && f >= 1.0 {
        f as u64 - 1
    } else {
        f as u64
    }
}

/// `sum_{k=m}^{m+n} p_k(lambda)`.
pub fn window_sum(lambda: Intensity, m: u64, n: u64) -> f64 {
    let terms: Vec<(f64, f64)> = (m..=m + n).map(|k| (log_pmf(lambda, k), 1.0)).collect();
    ScaledSum::from_terms(&terms).value()
}

/// Certified upper bound on `sum_{k>n} p_k(lambda)`:
/// `p_{n+1} / (1 - lambda / (n + 2))`, valid once the pmf ratio
/// `lambda / (k + 1)` is below one for every omitted `k`.
pub fn tail_bound(lambda: Intensity, n: u64) -> Result<f64> {
    let l = lambda.get();
    let denom = (n + 2) as f64;
    if denom <= l {
        return Err(Error::TailBoundInvalid { lambda: l, n });
    }
    Ok(pmf(lambda, n + 1) / (1.0 - l / denom))
}

/// Smallest `n >= ceil(2 lambda)` whose tail bound is at most `eps`.
pub fn truncation_index(lambda: Intensity, precision: impl Into<Precision>) -> Result<u64> {
    let precision = precision.into().validated()?;
    first_certified_index(twice_ceil(lambda.get()), precision, |n| {
        tail_bound(lambda, n).unwrap_or(f64::INFINITY)
    })
    .map(|(n, _)| n)
}

/// `sum_{k>n} p_k(lambda)` to working precision, summed directly rather
/// than as a complement so that small tails keep their relative accuracy.
pub fn upper_tail(lambda: Intensity, n: u64) -> f64 {
    let l = lambda.get();
    let mut terms = Vec::new();
    let mut largest = f64::NEG_INFINITY;
    let mut k = n + 1;
    loop {
        let lp = log_pmf(lambda, k);
        largest = largest.max(lp);
        terms.push((lp, 1.0));
        let denom = (k + 2) as f64;
        if denom > l {
            let rest = log_pmf(lambda, k + 1) - (1.0 - l / denom).ln();
            // remaining mass is below one part in 1e18 of what we have
            if rest < largest - 41.5 || rest < -745.0 {
                break;
            }
        }
        k += 1;
    }
    ScaledSum::from_terms(&terms).value()
}

/// `sum_{k<m} p_k(lambda)`.
pub fn lower_sum(lambda: Intensity, m: u64) -> f64 {
    if m == 0 {
        0.0
    } else {
        window_sum(lambda, 0, m - 1)
    }
}

//! Summation and truncation plumbing shared by every series in the crate.

use crate::error::{Error, Result};

/// Default absolute tolerance on omitted series mass.
pub const DEFAULT_EPS: f64 = 1e-12;

/// Default hard cap on the truncation index.
pub const DEFAULT_MAX_TERMS: u64 = 10_000_000;

/// Requested accuracy of a truncated series: the certified tail must not
/// exceed `eps`, and no more than `max_terms` terms are ever summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Precision {
    pub eps: f64,
    pub max_terms: u64,
}

impl Precision {
    pub fn new(eps: f64) -> Self {
        Self {
            eps,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn with_max_terms(self, max_terms: u64) -> Self {
        Self { max_terms, ..self }
    }

    pub(crate) fn validated(self) -> Result<Self> {
        if self.eps.is_finite() && self.eps > 0.0 {
            Ok(self)
        } else {
            Err(Error::InvalidTolerance(self.eps))
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::new(DEFAULT_EPS)
    }
}

impl From<f64> for Precision {
    fn from(eps: f64) -> Self {
        Self::new(eps)
    }
}

/// An evaluated series together with where it was cut and a certified upper
/// bound on what was cut off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub truncation_index: u64,
    pub tail_bound: f64,
}

/// Neumaier's variant of compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// A sum stored as `mantissa * exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledSum {
    pub log_scale: f64,
    pub mantissa: f64,
}

impl ScaledSum {
    /// Sums `factor * exp(log_magnitude)` over the terms, scaling every term by
    /// the largest magnitude before accumulating.
    pub fn from_terms(terms: &[(f64, f64)]) -> Self {
        let log_scale = terms
            .iter()
            .map(|&(l, _)| l)
            .fold(f64::NEG_INFINITY, f64::max);
        if !log_scale.is_finite() {
            return Self {
                log_scale: 0.0,
                mantissa: 0.0,
            };
        }
        let mantissa = terms
            .iter()
            .map(|&(l, f)| f * (l - log_scale).exp())
            .collect::<CompensatedSum>()
            .value();
        Self {
            log_scale,
            mantissa,
        }
    }

    pub fn value(&self) -> f64 {
        self.mantissa * self.log_scale.exp()
    }

    /// `value * exp(log_factor)` without forming either factor on its own.
    pub fn scaled(&self, log_factor: f64) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        let exponent = self.log_scale + log_factor;
        if exponent.abs() < 700.0 {
            return self.mantissa * exponent.exp();
        }
        let ln_abs = self.mantissa.abs().ln() + self.log_scale + log_factor;
        self.mantissa.signum() * ln_abs.exp()
    }
}

/// Scans upward from `start` for the first index whose certified bound is at
/// most `eps`. `bound` returns `+inf` where its geometric argument does not
/// yet apply.
pub(crate) fn first_certified_index(
    start: u64,
    precision: Precision,
    bound: impl Fn(u64) -> f64,
) -> Result<(u64, f64)> {
    let mut n = start;
    while n <= precision.max_terms {
        let b = bound(n);
        if b <= precision.eps {
            return Ok((n, b));
        }
        n += 1;
    }
    Err(Error::TruncationCap {
        cap: precision.max_terms,
    })
}

/// `ceil(2 lambda)`, the smallest index past which the pmf ratio is below 1/2.
pub(crate) fn twice_ceil(lambda: f64) -> u64 {
    (2.0 * lambda).ceil() as u64
}

//! The pmf rearranged in nonincreasing order, its partial sums, and a
//! general majorization / Karamata checker.
//!
//! The `n + 1` largest pmf terms always sit on consecutive indices
//! `start..=start + n`. The best start moves from `m` to `m + 1` exactly when
//! `lambda` crosses the threshold `c_m`, the geometric mean of
//! `m + 1, ..., m + n + 1`.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::poisson::{log_pmf, lower_sum, upper_tail, window_sum, Intensity};
use crate::series::CompensatedSum;
use crate::special::log_factorial;

/// Relative tolerance for prefix dominance and total-sum equality.
pub const DEFAULT_TOLERANCE: f64 = 1e-14;

/// `c_m = ((m + 1) ... (m + n + 1))^{1 / (n + 1)}`, formed as the
/// exponential of a mean of logarithms.
pub fn window_threshold(m: u64, n: u64) -> f64 {
    if n == 0 {
        return (m + 1) as f64;
    }
    let logs: CompensatedSum = (m + 1..=m + n + 1).map(|j| (j as f64).ln()).collect();
    (logs.value() / (n + 1) as f64).exp()
}

/// Start index `l(lambda)` of the heaviest window of `n + 1` consecutive
/// terms: the smallest `m` with `lambda <= c_m`. At `lambda = c_m` both `m`
/// and `m + 1` are optimal and the smaller one is returned.
pub fn window_start(lambda: Intensity, n: u64) -> u64 {
    let l = lambda.get();
    // c_m lies in [m + 1, m + n + 1], which brackets the answer
    let mut lo = (l - n as f64 - 1.0).floor().max(0.0) as u64;
    let mut hi = l.ceil() as u64;
    if l <= window_threshold(lo, n) {
        return lo;
    }
    // invariant: c_lo < lambda <= c_hi
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if l <= window_threshold(mid, n) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// The `n + 1` largest pmf terms in nonincreasing order, with the mass
/// outside them.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub start: u64,
    pub values: Vec<f64>,
    pub remainder: f64,
}

impl Window {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index range of the pmf terms held by the window.
    pub fn indices(&self) -> RangeInclusive<u64> {
        self.start..=self.start + self.values.len() as u64 - 1
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().copied().collect::<CompensatedSum>().value()
    }

    /// `(q_0, ..., q_n, r_n)`.
    pub fn extended(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.push(self.remainder);
        v
    }
}

/// `(q_0, ..., q_n)` together with `r_n = 1 - S_n(lambda)`. The remainder is
/// summed directly from both sides of the window, not taken as a complement.
pub fn rearranged_prefix(lambda: Intensity, n: u64) -> Window {
    let start = window_start(lambda, n);
    let mut values: Vec<f64> = (start..=start + n).map(|k| log_pmf(lambda, k).exp()).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    let mut remainder = CompensatedSum::new();
    remainder.add(lower_sum(lambda, start));
    remainder.add(upper_tail(lambda, start + n));
    Window {
        start,
        values,
        remainder: remainder.value(),
    }
}

/// `S_n(lambda)`, the sum of the `n + 1` largest pmf terms.
pub fn partial_sum(lambda: Intensity, n: u64) -> f64 {
    window_sum(lambda, window_start(lambda, n), n)
}

/// Window length for a majorization certificate at intensities up to
/// `lambda`: at least `ceil(2 lambda) + 20`, and long enough that
/// `lambda^n <= n!`. The latter puts the window at start 0 with `p_n` as its
/// smallest entry, so the geometric tail gives `r_n <= p_n = q_n`.
pub fn certificate_length(lambda: Intensity) -> u64 {
    let l = lambda.get();
    let base = (2.0 * l).ceil() as u64 + 20;
    if l <= 1.0 {
        return base;
    }
    let ln_l = l.ln();
    let mut n = l.floor() as u64;
    while log_factorial(n) < n as f64 * ln_l {
        n += 1;
    }
    base.max(n)
}

/// Outcome of checking the three majorization conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MajorizationVerdict {
    pub sorted_a: bool,
    pub sorted_b: bool,
    /// Number of leading proper prefixes (lengths `1..len`) at which `a`
    /// dominates `b`.
    pub prefix_dominance_upto: usize,
    pub sums_equal: bool,
    pub majorizes: bool,
    /// Every proper prefix of `a` strictly exceeds that of `b`.
    pub strict: bool,
}

fn nonincreasing(v: &[f64], tol: f64) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + tol)
}

/// Checks whether `a` majorizes `b`. `tol` is relative to the larger of the
/// two absolute sums.
pub fn check_majorization(a: &[f64], b: &[f64], tol: f64) -> Result<MajorizationVerdict> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptySequence);
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let scale = a
        .iter()
        .map(|x| x.abs())
        .sum::<f64>()
        .max(b.iter().map(|x| x.abs()).sum::<f64>());
    let tol = if scale > 0.0 { tol * scale } else { tol };

    let mut pa = CompensatedSum::new();
    let mut pb = CompensatedSum::new();
    let mut prefix_dominance_upto = 0;
    let mut dominating = true;
    let mut strict = true;
    for (&x, &y) in a.iter().zip(b).take(a.len() - 1) {
        pa.add(x);
        pb.add(y);
        let (sa, sb) = (pa.value(), pb.value());
        strict &= sa > sb;
        dominating &= sa >= sb - tol;
        if dominating {
            prefix_dominance_upto += 1;
        }
    }
    pa.add(a[a.len() - 1]);
    pb.add(b[b.len() - 1]);
    let sums_equal = (pa.value() - pb.value()).abs() <= tol;

    let sorted_a = nonincreasing(a, tol);
    let sorted_b = nonincreasing(b, tol);
    let majorizes = sorted_a && sorted_b && sums_equal && prefix_dominance_upto == a.len() - 1;
    Ok(MajorizationVerdict {
        sorted_a,
        sorted_b,
        prefix_dominance_upto,
        sums_equal,
        majorizes,
        strict: strict && majorizes,
    })
}

/// `sum f(a_k) - sum f(b_k)` for `a` majorizing `b`; nonnegative for convex
/// `f` and nonpositive for concave `f` on `domain`.
pub fn karamata_gap(
    f: impl Fn(f64) -> f64,
    domain: RangeInclusive<f64>,
    a: &[f64],
    b: &[f64],
) -> Result<f64> {
    if !check_majorization(a, b, DEFAULT_TOLERANCE)?.majorizes {
        return Err(Error::NotMajorized);
    }
    if let Some(&value) = a.iter().chain(b).find(|x| !domain.contains(x)) {
        return Err(Error::OutsideDomain {
            value,
            lo: *domain.start(),
            hi: *domain.end(),
        });
    }
    let mut acc = CompensatedSum::new();
    for (&x, &y) in a.iter().zip(b) {
        acc.add(f(x));
        acc.add(-f(y));
    }
    Ok(acc.value())
}

//! Grid-based checks of the monotonicity, concavity, sign and majorization
//! properties, each producing a pass/fail report.
//!
//! Strictness rule: a difference (or value) with the wrong sign is only a
//! violation when it is larger than twice the summed certified tail bounds
//! of the values involved, so truncation noise cannot cause a failure. A
//! difference of exactly zero between values with zero bounds is a
//! violation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{head_sum_scaled, s1_upper_bound, stirling_bounds, tail_fraction, AsymptoticReport};
use crate::error::{Error, Result};
use crate::majorization::{certificate_length, check_majorization, karamata_gap, rearranged_prefix, window_threshold, DEFAULT_TOLERANCE};
use crate::poisson::Intensity;
use crate::quantity::{evaluate, Evaluation, Model, Point, Quantity};
use crate::series::Precision;
use crate::sweep::{lambda_grid, ordered_map, tenths};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    /// `H_S` strictly increasing and `H_S' > 0`.
    EntropyIncreasing,
    /// `H_S'' < 0`, confirmed by finite differences.
    EntropyConcave,
    /// `psi(alpha, .)` increasing and `H_R` increasing for `alpha < 1`.
    PsiBelowOne,
    /// `psi(alpha, .)` decreasing and `H_R` increasing for `alpha > 1`.
    PsiAboveOne,
    /// `S_n` strictly decreasing, across every window threshold.
    PartialSums,
    /// Sign of `R` and its link to the derivative of `psi`.
    RSign,
    /// The entropy-derivative statistic exceeds one and its bounds hold.
    PrimeStatistic,
    /// Poisson vectors majorize in `lambda` and Karamata gaps have the
    /// convexity-predicted sign.
    Karamata,
}

impl ClaimId {
    pub const ALL: [ClaimId; 8] = [
        ClaimId::EntropyIncreasing,
        ClaimId::EntropyConcave,
        ClaimId::PsiBelowOne,
        ClaimId::PsiAboveOne,
        ClaimId::PartialSums,
        ClaimId::RSign,
        ClaimId::PrimeStatistic,
        ClaimId::Karamata,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClaimId::EntropyIncreasing => "theorem-1-increasing",
            ClaimId::EntropyConcave => "theorem-1-concave",
            ClaimId::PsiBelowOne => "theorem-2-alpha-lt-1",
            ClaimId::PsiAboveOne => "theorem-2-alpha-gt-1",
            ClaimId::PartialSums => "lemma-1-partial-sums",
            ClaimId::RSign => "lemma-2-sign",
            ClaimId::PrimeStatistic => "lemma-a1-statistic",
            ClaimId::Karamata => "lemma-a2-karamata",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown claim '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub params: String,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub claim: ClaimId,
    pub grid: String,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} checks, {} violations ({})",
            self.claim,
            self.checks,
            self.violations.len(),
            self.grid
        )?;
        for v in self.violations.iter().take(10) {
            write!(f, "\n  {}: {}", v.params, v.observed)?;
        }
        if self.violations.len() > 10 {
            write!(f, "\n  ... {} more", self.violations.len() - 10)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub precision: Precision,
    /// Tighter tolerance for values that feed finite differences.
    pub fine_precision: Precision,
    pub seed: u64,
    pub karamata_pairs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            precision: Precision::new(1e-12),
            fine_precision: Precision::new(1e-15),
            seed: 0x5eed,
            karamata_pairs: 50,
        }
    }
}

impl VerifyOptions {
    pub fn with_max_terms(self, max_terms: u64) -> Self {
        Self {
            precision: self.precision.with_max_terms(max_terms),
            fine_precision: self.fine_precision.with_max_terms(max_terms),
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Up,
    Down,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Up => 1.0,
            Direction::Down => -1.0,
        }
    }
}

struct Recorder {
    checks: usize,
    violations: Vec<Violation>,
}

impl Recorder {
    fn new() -> Self {
        Self {
            checks: 0,
            violations: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, params: impl FnOnce() -> String, observed: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                params: params(),
                observed: observed(),
            });
        }
    }

    /// `value` has the sign of `dir`, under the strictness rule.
    fn sign(&mut self, value: f64, noise: f64, dir: Direction, params: impl FnOnce() -> String) {
        // NaN counts as the wrong sign.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        let wrong = !(value * dir.sign() > 0.0);
        let excused = noise > 0.0 && value.abs() <= 2.0 * noise;
        self.check(!wrong || excused, params, || format!("value {value:e}, tail bound {noise:e}"));
    }

    /// Consecutive values move in direction `dir`.
    fn monotone(&mut self, lambdas: &[f64], values: &[Evaluation], dir: Direction, label: &str) {
        for (i, w) in values.windows(2).enumerate() {
            let d = w[1].value - w[0].value;
            self.sign(d, w[0].tail_bound + w[1].tail_bound, dir, || {
                format!("{label} lambda {} -> {}", lambdas[i], lambdas[i + 1])
            });
        }
    }

    fn finish(self, claim: ClaimId, grid: String) -> VerificationReport {
        VerificationReport {
            claim,
            grid,
            checks: self.checks,
            violations: self.violations,
        }
    }
}

fn eval_grid(model: &dyn Model, q: Quantity, base: Point, lambdas: &[f64], p: Precision) -> Result<Vec<Evaluation>> {
    ordered_map(lambdas, |&lambda| evaluate(model, q, Point { lambda, ..base }, p))
        .into_iter()
        .collect()
}

fn lam(x: f64) -> Result<Intensity> {
    Intensity::new(x)
}

fn describe(start: f64, stop: f64, step: f64, count: usize) -> String {
    format!("lambda in [{start}, {stop}] step {step}, {count} points")
}

/// Runs one claim on its default grid.
pub fn verify(model: &dyn Model, claim: ClaimId, opts: &VerifyOptions) -> Result<VerificationReport> {
    match claim {
        ClaimId::EntropyIncreasing => entropy_increasing(model, opts),
        ClaimId::EntropyConcave => entropy_concave(model, opts),
        ClaimId::PsiBelowOne => psi_monotone(model, opts, claim, tenths(1, 9), Direction::Up),
        ClaimId::PsiAboveOne => psi_monotone(model, opts, claim, tenths(11, 20), Direction::Down),
        ClaimId::PartialSums => partial_sums(model),
        ClaimId::RSign => r_sign(model, opts),
        ClaimId::PrimeStatistic => prime_statistic(model, opts),
        ClaimId::Karamata => karamata(opts),
    }
}

pub fn verify_all(model: &dyn Model, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    ClaimId::ALL.into_iter().map(|c| verify(model, c, opts)).collect()
}

fn entropy_increasing(model: &dyn Model, opts: &VerifyOptions) -> Result<VerificationReport> {
    let grid = lambda_grid(0.1, 50.0, 0.1)?;
    let base = Point::new(0.0);
    let h = eval_grid(model, Quantity::Shannon, base, &grid, opts.precision)?;
    let d = eval_grid(model, Quantity::ShannonPrime, base, &grid, opts.precision)?;
    let mut rec = Recorder::new();
    rec.monotone(&grid, &h, Direction::Up, "H_S");
    for (l, e) in grid.iter().zip(&d) {
        rec.sign(e.value, e.tail_bound, Direction::Up, || format!("H_S' lambda {l}"));
    }
    Ok(rec.finish(ClaimId::EntropyIncreasing, describe(0.1, 50.0, 0.1, grid.len())))
}

/// Step of the second-difference check.
pub const FD_STEP: f64 = 1e-3;
/// Allowed gap between the second difference and `H_S''`.
pub const FD_TOLERANCE: f64 = 1e-5;

fn entropy_concave(model: &dyn Model, opts: &VerifyOptions) -> Result<VerificationReport> {
    let grid = lambda_grid(0.1, 50.0, 0.1)?;
    let base = Point::new(0.0);
    let d2 = eval_grid(model, Quantity::ShannonSecond, base, &grid, opts.precision)?;
    // five-point stencil: O(h^4) error, where the three-point rule's O(h^2)
    // error alone exceeds the tolerance near lambda = 0.1
    let h = FD_STEP;
    let stencil: Vec<f64> = grid
        .iter()
        .flat_map(|&l| [l - 2.0 * h, l - h, l, l + h, l + 2.0 * h])
        .collect();
    let f = eval_grid(model, Quantity::Shannon, base, &stencil, opts.fine_precision)?;
    let mut rec = Recorder::new();
    for ((l, e), w) in grid.iter().zip(&d2).zip(f.chunks(5)) {
        rec.sign(e.value, e.tail_bound, Direction::Down, || format!("H_S'' lambda {l}"));
        let [m2, m1, c, p1, p2] = [w[0].value, w[1].value, w[2].value, w[3].value, w[4].value];
        let fd = (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h);
        rec.check(
            fd < 0.0 && (fd - e.value).abs() <= FD_TOLERANCE,
            || format!("second difference lambda {l}"),
            || format!("difference {fd:e}, H_S'' {:e}", e.value),
        );
    }
    let desc = format!("{}, five-point second difference h = {h}", describe(0.1, 50.0, 0.1, grid.len()));
    Ok(rec.finish(ClaimId::EntropyConcave, desc))
}

fn psi_monotone(
    model: &dyn Model,
    opts: &VerifyOptions,
    claim: ClaimId,
    alphas: Vec<f64>,
    psi_dir: Direction,
) -> Result<VerificationReport> {
    let grid = lambda_grid(0.1, 50.0, 0.1)?;
    let mut rec = Recorder::new();
    for &a in &alphas {
        let base = Point::new(0.0).with_alpha(a);
        let psi = eval_grid(model, Quantity::Psi, base, &grid, opts.precision)?;
        rec.monotone(&grid, &psi, psi_dir, &format!("psi alpha {a}"));
        let hr = eval_grid(model, Quantity::Renyi, base, &grid, opts.precision)?;
        rec.monotone(&grid, &hr, Direction::Up, &format!("H_R alpha {a}"));
    }
    let desc = format!(
        "alpha in {{{}..{}}} step 0.1 x {}",
        alphas[0],
        alphas[alphas.len() - 1],
        describe(0.1, 50.0, 0.1, grid.len())
    );
    Ok(rec.finish(claim, desc))
}

/// The lambda grid plus points at and just either side of every window
/// threshold `c_m` (for `m <= 10`) that falls inside it.
pub fn partial_sum_grid(n: u64) -> Vec<f64> {
    let mut pts = lambda_grid(0.1, 50.0, 0.1).expect("static grid");
    for m in 0..=10 {
        let c = window_threshold(m, n);
        if c > 0.1 && c < 50.0 {
            pts.extend([c * (1.0 - 1e-7), c, c * (1.0 + 1e-7)]);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// `S_n` decreasing is checked as `1 - S_n` increasing, with the complement
/// summed directly: for small `lambda` and large `n`, `S_n` itself rounds to
/// one and its differences vanish.
fn partial_sums(model: &dyn Model) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let mut total = 0;
    for n in 0..=20u64 {
        let grid = partial_sum_grid(n);
        total += grid.len();
        let pairs: Vec<Result<(Evaluation, Evaluation)>> = ordered_map(&grid, |&l| {
            let lambda = lam(l)?;
            Ok((model.partial_sum(lambda, n)?, model.partial_remainder(lambda, n)?))
        });
        let pairs = pairs.into_iter().collect::<Result<Vec<_>>>()?;
        let (sums, rems): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        rec.monotone(&grid, &rems, Direction::Up, &format!("1 - S_{n}"));
        for ((l, s), r) in grid.iter().zip(&sums).zip(&rems) {
            rec.check(
                (s.value + r.value - 1.0).abs() <= 1e-14,
                || format!("S_{n} lambda {l}"),
                || format!("S_n {:e} + remainder {:e} != 1", s.value, r.value),
            );
        }
    }
    let desc = format!("n in 0..=20, lambda in [0.1, 50] step 0.1 plus thresholds c_m (m <= 10), {total} points");
    Ok(rec.finish(ClaimId::PartialSums, desc))
}

/// Threshold on `|R|` away from `alpha = 1`.
pub const R_FLOOR: f64 = 1e-14;
/// Step of the central difference of `psi`.
pub const PSI_FD_STEP: f64 = 1e-5;
pub const PSI_FD_TOLERANCE: f64 = 1e-6;

fn r_sign(model: &dyn Model, opts: &VerifyOptions) -> Result<VerificationReport> {
    let grid = lambda_grid(0.1, 20.0, 0.1)?;
    let mut rec = Recorder::new();
    let h = PSI_FD_STEP;
    let shifted: Vec<f64> = grid.iter().flat_map(|&l| [l - h, l + h]).collect();
    for a in tenths(1, 9).into_iter().chain(tenths(11, 20)) {
        let base = Point::new(0.0).with_alpha(a);
        let r = eval_grid(model, Quantity::R, base, &grid, opts.precision)?;
        let psi = eval_grid(model, Quantity::Psi, base, &shifted, opts.fine_precision)?;
        for ((l, e), w) in grid.iter().zip(&r).zip(psi.chunks(2)) {
            let ok = if a < 1.0 { e.value > R_FLOOR } else { e.value < -R_FLOOR };
            rec.check(ok, || format!("R alpha {a} lambda {l}"), || format!("value {:e}", e.value));
            let derivative = a * (-a * l).exp() * e.value;
            let fd = (w[1].value - w[0].value) / (2.0 * h);
            rec.check(
                (derivative - fd).abs() <= PSI_FD_TOLERANCE,
                || format!("d psi / d lambda alpha {a} lambda {l}"),
                || format!("from R {derivative:e}, central difference {fd:e}"),
            );
        }
    }
    let one = Point::new(0.0).with_alpha(1.0);
    for (l, e) in grid.iter().zip(eval_grid(model, Quantity::R, one, &grid, opts.precision)?) {
        rec.check(
            e.value.abs() < 1e-12,
            || format!("R alpha 1 lambda {l}"),
            || format!("value {:e}", e.value),
        );
    }
    let desc = format!(
        "alpha in {{0.1..0.9}} and {{1.1..2.0}} step 0.1, plus alpha = 1, x {}",
        describe(0.1, 20.0, 0.1, grid.len())
    );
    Ok(rec.finish(ClaimId::RSign, desc))
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let r = (hi / lo).ln();
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo * (r * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

fn prime_statistic(model: &dyn Model, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let base = Point::new(0.0);

    let grid = log_grid(1.5, 1000.0, 30);
    for (l, e) in grid.iter().zip(eval_grid(model, Quantity::Statistic, base, &grid, opts.precision)?) {
        rec.sign(e.value - 1.0, e.tail_bound, Direction::Up, || format!("statistic - 1, lambda {l}"));
    }

    let far = [100.0, 200.0, 400.0, 800.0];
    let t = eval_grid(model, Quantity::Statistic, base, &far, opts.precision)?;
    rec.monotone(&far, &t, Direction::Down, "statistic");

    for l in [50.0, 100.0, 200.0] {
        let bound = s1_upper_bound(lam(l)?)?;
        let head = head_sum_scaled(lam(l)?)?;
        rec.check(
            head <= bound,
            || format!("head bound lambda {l}"),
            || format!("head {head:e} > bound {bound:e}"),
        );
    }
    for l in [50.0, 100.0, 200.0, 400.0] {
        let r = AsymptoticReport::new(lam(l)?, opts.precision)?;
        rec.check(r.chain_holds(), || format!("split chain lambda {l}"), || format!("{r:?}"));
    }

    let tf = tail_fraction(lam(100.0)?);
    rec.check(tf > 0.999, || "tail fraction lambda 100".into(), || format!("{tf}"));

    let mut factorial = 1.0f64;
    for n in 2..=170u64 {
        factorial *= n as f64;
        let b = stirling_bounds(n)?;
        let lf = factorial.ln();
        rec.check(
            b.ln_lower < lf && lf < b.ln_upper,
            || format!("Stirling bounds n {n}"),
            || format!("ln n! {lf}, bounds [{}, {}]", b.ln_lower, b.ln_upper),
        );
    }
    let desc = "30 log-spaced lambda in [1.5, 1000]; lambda in {100, 200, 400, 800}; head bound at {50, 100, 200}; Stirling n in 2..=170".to_string();
    Ok(rec.finish(ClaimId::PrimeStatistic, desc))
}

/// `count` pairs `lambda1 < lambda2` drawn uniformly from `(lo, hi)`.
pub fn random_pairs(seed: u64, count: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: f64 = rng.gen_range(lo..hi);
        let y: f64 = rng.gen_range(lo..hi);
        if x != y {
            out.push((x.min(y), x.max(y)));
        }
    }
    out
}

fn karamata(opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    for (l1, l2) in random_pairs(opts.seed, opts.karamata_pairs, 0.1, 20.0) {
        let n = certificate_length(lam(l2)?);
        let a = rearranged_prefix(lam(l1)?, n).extended();
        let b = rearranged_prefix(lam(l2)?, n).extended();
        let params = || format!("lambda1 {l1}, lambda2 {l2}, n {n}");
        let verdict = check_majorization(&a, &b, DEFAULT_TOLERANCE)?;
        rec.check(verdict.majorizes, params, || format!("{verdict:?}"));
        if !verdict.majorizes {
            continue;
        }
        for (alpha, dir) in [(0.5, Direction::Down), (2.0, Direction::Up)] {
            let gap = karamata_gap(|x| x.powf(alpha), 0.0..=1.0, &a, &b)?;
            rec.sign(gap, 0.0, dir, || format!("x^{alpha}, {}", params()));
        }
    }
    let desc = format!(
        "{} seeded pairs lambda1 < lambda2 in (0.1, 20), f = x^0.5 and x^2",
        opts.karamata_pairs
    );
    Ok(rec.finish(ClaimId::Karamata, desc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::RenyiOrder;
    use crate::quantity::PoissonModel;

    #[test]
    fn claim_ids_round_trip() {
        for c in ClaimId::ALL {
            assert_eq!(c.id().parse::<ClaimId>().unwrap(), c);
        }
        assert!("theorem-3".parse::<ClaimId>().is_err());
    }

    #[test]
    fn strictness_rule() {
        let mut rec = Recorder::new();
        rec.sign(-1e-13, 1e-13, Direction::Up, String::new);
        rec.sign(1e-20, 0.0, Direction::Up, String::new);
        assert!(rec.violations.is_empty());
        rec.sign(-3e-13, 1e-13, Direction::Up, String::new);
        rec.sign(0.0, 0.0, Direction::Up, String::new);
        rec.sign(f64::NAN, 1.0, Direction::Up, String::new);
        assert_eq!(rec.violations.len(), 3);
        assert_eq!(rec.checks, 5);
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1.5, 1000.0, 30);
        assert_eq!(g.len(), 30);
        assert_eq!(g[0], 1.5);
        assert_eq!(g[29], 1000.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn pairs_are_seeded_and_ordered() {
        let a = random_pairs(7, 50, 0.1, 20.0);
        assert_eq!(a, random_pairs(7, 50, 0.1, 20.0));
        assert_ne!(a, random_pairs(8, 50, 0.1, 20.0));
        assert!(a.iter().all(|&(x, y)| 0.1 <= x && x < y && y < 20.0));
    }

    #[test]
    fn threshold_grid_straddles() {
        let g = partial_sum_grid(0);
        for m in 0..=10 {
            let c = (m + 1) as f64;
            assert!(g.contains(&c));
            assert!(g.iter().any(|&x| x < c && x > c - 1e-5));
        }
    }

    struct NegatedR;

    impl Model for NegatedR {
        fn r(&self, alpha: RenyiOrder, lambda: Intensity, p: Precision) -> Result<Evaluation> {
            let e = PoissonModel.r(alpha, lambda, p)?;
            Ok(Evaluation { value: -e.value, ..e })
        }
    }

    #[test]
    fn karamata_claim_passes() {
        let report = verify(&PoissonModel, ClaimId::Karamata, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks, 150);
    }

    #[test]
    fn corrupted_r_fails() {
        let report = verify(&NegatedR, ClaimId::RSign, &VerifyOptions::default()).unwrap();
        assert!(!report.passed());
        assert!(report.to_string().starts_with("FAIL lemma-2-sign"));
    }
}

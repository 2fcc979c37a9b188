mod common;

use common::Oracle;
use entropykit::majorization::{
    certificate_length, check_majorization, karamata_gap, partial_sum, rearranged_prefix, window_start,
    window_threshold, DEFAULT_TOLERANCE,
};
use entropykit::poisson::{pmf, Intensity};
use proptest::prelude::*;

fn lam(x: f64) -> Intensity {
    Intensity::new(x).unwrap()
}

/// Start of a heaviest window by exhaustive search; returns every start
/// within `1e-15` relative of the best, since exact ties are real.
fn best_starts(l: f64, n: u64) -> Vec<u64> {
    let hi = (l.ceil() as u64) + 2;
    let sums: Vec<f64> = (0..=hi)
        .map(|m| (m..=m + n).map(|k| pmf(lam(l), k)).sum::<f64>())
        .collect();
    let best = sums.iter().copied().fold(f64::MIN, f64::max);
    (0..=hi).filter(|&m| sums[m as usize] >= best * (1.0 - 1e-15)).collect()
}

#[test]
fn window_start_is_an_argmax() {
    for i in (1..=500).step_by(3) {
        let l = i as f64 / 10.0;
        for n in 0..=12 {
            let s = window_start(lam(l), n);
            let best = best_starts(l, n);
            assert!(best.contains(&s), "lambda = {l}, n = {n}: {s} not in {best:?}");
            assert_eq!(s, best[0], "lambda = {l}, n = {n}: smaller start expected");
        }
    }
}

#[test]
fn largest_terms_are_consecutive() {
    for &l in &[0.4, 1.0, 3.3, 7.0, 18.25] {
        let all: Vec<f64> = (0..200).map(|k| pmf(lam(l), k)).collect();
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        for n in 0..15u64 {
            let w = rearranged_prefix(lam(l), n);
            for (got, want) in w.values.iter().zip(&sorted) {
                assert!((got - want).abs() <= 1e-15 * want, "lambda = {l}, n = {n}");
            }
        }
    }
}

#[test]
fn rearranged_values_repeat_at_most_twice() {
    for i in 1..=300 {
        let l = i as f64 / 10.0;
        let w = rearranged_prefix(lam(l), 40);
        for (j, v) in w.values.iter().enumerate() {
            let copies = w.values[j..]
                .iter()
                .take_while(|x| (*x - v).abs() <= 1e-12 * v)
                .count();
            assert!(copies <= 2, "lambda = {l}");
        }
    }
}

#[test]
fn partial_sum_matches_oracle() {
    let mut o = Oracle::new();
    for &(l, n) in &[(0.3, 0), (2.7, 5), (9.5, 3), (33.0, 17), (48.0, 40)] {
        let m = window_start(lam(l), n);
        let exact = o.window_sum(l, m, n);
        assert!((partial_sum(lam(l), n) - exact).abs() < 1e-14, "lambda = {l}, n = {n}");
    }
}

#[test]
fn remainder_matches_oracle() {
    let mut o = Oracle::new();
    for &(l, n) in &[(0.1, 20), (1.0, 3), (12.0, 40), (25.0, 70)] {
        let w = rearranged_prefix(lam(l), n);
        let exact = o.outside_window(l, w.start, n);
        let tol = if exact < 1e-10 { 1e-12 * exact } else { 1e-14 };
        assert!((w.remainder - exact).abs() <= tol, "lambda = {l}, n = {n}: {} vs {exact}", w.remainder);
    }
}

#[test]
fn certificate_length_is_base_length_below_twenty() {
    for i in 1..200 {
        let l = i as f64 / 10.0;
        assert_eq!(certificate_length(lam(l)), (2.0 * l).ceil() as u64 + 20, "lambda = {l}");
    }
}

#[test]
fn base_length_alone_is_not_a_certificate() {
    // at lambda = 40 a window of ceil(2 lambda) + 20 leaves more mass
    // outside than its smallest entry
    let l = lam(40.0);
    let w = rearranged_prefix(l, 100);
    assert!(w.remainder > *w.values.last().unwrap());
    let w = rearranged_prefix(l, certificate_length(l));
    assert!(w.remainder <= *w.values.last().unwrap());
}

#[test]
fn partial_sums_continuous_across_thresholds() {
    for n in [0, 1, 5, 12] {
        for m in 0..=10 {
            let c = window_threshold(m, n);
            let below = partial_sum(lam(c * (1.0 - 1e-12)), n);
            let above = partial_sum(lam(c * (1.0 + 1e-12)), n);
            assert!((below - above).abs() < 1e-10, "n = {n}, m = {m}");
        }
    }
}

#[test]
fn poisson_vectors_majorize() {
    for &(a, b) in &[(0.5, 0.9), (1.0, 2.0), (3.0, 3.1), (10.0, 19.5)] {
        let n = certificate_length(lam(b));
        let va = rearranged_prefix(lam(a), n).extended();
        let vb = rearranged_prefix(lam(b), n).extended();
        let v = check_majorization(&va, &vb, DEFAULT_TOLERANCE).unwrap();
        assert!(v.majorizes, "{a} vs {b}: {v:?}");
        // prefix sums near one round together in binary64, so strictness is
        // read off the directly summed complements instead
        for k in 0..n {
            let ra = rearranged_prefix(lam(a), k).remainder;
            let rb = rearranged_prefix(lam(b), k).remainder;
            assert!(ra < rb, "{a} vs {b}, k = {k}");
        }
        let back = check_majorization(&vb, &va, DEFAULT_TOLERANCE).unwrap();
        assert!(!back.majorizes);
    }
}

fn descending_vector() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 1..12).prop_map(|mut v| {
        v.sort_by(|a, b| b.total_cmp(a));
        v
    })
}

proptest! {
    #[test]
    fn every_sorted_vector_majorizes_its_average(v in descending_vector()) {
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let flat = vec![mean; v.len()];
        let verdict = check_majorization(&v, &flat, DEFAULT_TOLERANCE).unwrap();
        prop_assert!(verdict.majorizes);
        let gap = karamata_gap(|x| x * x, 0.0..=1.0, &v, &flat).unwrap();
        prop_assert!(gap >= -1e-15);
    }

    #[test]
    fn majorization_is_reflexive(v in descending_vector()) {
        let verdict = check_majorization(&v, &v, DEFAULT_TOLERANCE).unwrap();
        prop_assert!(verdict.majorizes);
        // a single entry has no proper prefix, so strictness holds vacuously
        prop_assert_eq!(verdict.strict, v.len() == 1);
    }

    #[test]
    fn window_start_is_monotone_in_lambda(a in 0.01f64..60.0, b in 0.01f64..60.0, n in 0u64..30) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(window_start(lam(lo), n) <= window_start(lam(hi), n));
    }

    #[test]
    fn window_mass_plus_remainder_is_one(l in 0.01f64..200.0, n in 0u64..60) {
        let w = rearranged_prefix(lam(l), n);
        prop_assert!((w.sum() + w.remainder - 1.0).abs() < 1e-13);
        prop_assert!(w.values.windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn partial_sums_decrease_in_lambda(a in 0.01f64..60.0, d in 1e-3f64..5.0, n in 0u64..25) {
        let r1 = rearranged_prefix(lam(a), n).remainder;
        let r2 = rearranged_prefix(lam(a + d), n).remainder;
        prop_assert!(r2 > r1);
    }
}

//! Log-factorial and the pieces of the saddle-point form of the Poisson pmf.
//!
//! `ln k!` is split as `(k + 1/2) ln k - k + ln sqrt(2 pi) + stirling_remainder(k)`.
//! The remainder is tabulated for small `k` and taken from its asymptotic
//! series otherwise, which keeps it accurate to a few ulps everywhere.

use std::f64::consts::PI;

/// `ln sqrt(2 pi)`
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// ln k! - (k + 1/2) ln k + k - ln sqrt(2 pi), k = 0..=15 (k = 0 unused).
#[allow(clippy::excessive_precision)]
const REMAINDER_TABLE: [f64; 16] = [
    0.0,
    0.081_061_466_795_327_258_22,
    0.041_340_695_955_409_294_094,
    0.027_677_925_684_998_339_149,
    0.020_790_672_103_765_093_112,
    0.016_644_691_189_821_192_163,
    0.013_876_128_823_070_747_999,
    0.011_896_709_945_891_770_095,
    0.010_411_265_261_972_096_497,
    0.009_255_462_182_712_732_917_7,
    0.008_330_563_433_362_871_256_5,
    0.007_573_675_487_951_840_795,
    0.006_942_840_107_209_529_865_7,
    0.006_408_994_188_004_207_068_4,
    0.005_951_370_112_758_847_735_6,
    0.005_554_733_551_962_801_371,
];

/// Stirling remainder `ln k! - ((k + 1/2) ln k - k + ln sqrt(2 pi))` for `k >= 1`.
pub fn stirling_remainder(k: u64) -> f64 {
    if k < REMAINDER_TABLE.len() as u64 {
        return REMAINDER_TABLE[k as usize];
    }
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    let n = k as f64;
    let nn = n * n;
    (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
}

/// `ln k!`.
pub fn log_factorial(k: u64) -> f64 {
    if k < 2 {
        return 0.0;
    }
    if k <= 20 {
        // exact in u64, one rounding on conversion
        let f: u64 = (2..=k).product();
        return (f as f64).ln();
    }
    let n = k as f64;
    (n + 0.5) * n.ln() - n + LN_SQRT_2PI + stirling_remainder(k)
}

/// Deviance term `x ln(x / m) + m - x`, evaluated without cancellation when
/// `x` is close to `m`.
pub fn deviance(x: f64, m: f64) -> f64 {
    if x == 0.0 {
        return m;
    }
    let d = x - m;
    if d.abs() < 0.5 * (x + m) {
        let mut v = d / (x + m);
        let mut s = d * v;
        let mut ej = 2.0 * x * v;
        v *= v;
        for j in 1..1000 {
            ej *= v;
            let next = s + ej / (2 * j + 1) as f64;
            if next == s {
                return next;
            }
            s = next;
        }
        s
    } else {
        x * (x / m).ln() + m - x
    }
}

/// `ln(2 pi k) / 2`
pub(crate) fn half_ln_2pi(k: f64) -> f64 {
    0.5 * (2.0 * PI * k).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainder_table_matches_series_at_handover() {
        // the asymptotic series is already accurate at 15
        let n = 15.0_f64;
        let nn = n * n;
        let series = (1.0 / 12.0
            - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / 1188.0 / nn) / nn) / nn) / nn)
            / n;
        assert!((series - REMAINDER_TABLE[15]).abs() < 1e-15);
    }

    #[test]
    fn log_factorial_small_values() {
        assert_eq!(log_factorial(0), 0.0);
        assert_eq!(log_factorial(1), 0.0);
        assert!((log_factorial(5) - 120f64.ln()).abs() < 1e-15);
        assert!((log_factorial(10) - 3_628_800f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn log_factorial_continuous_across_branches() {
        // ln 21! = ln 20! + ln 21
        let step = log_factorial(21) - log_factorial(20);
        assert!((step - 21f64.ln()).abs() < 1e-13);
        for k in 15..40u64 {
            let d = log_factorial(k + 1) - log_factorial(k);
            assert!((d - ((k + 1) as f64).ln()).abs() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn deviance_branches_agree() {
        for &(x, m) in &[(10.0_f64, 10.5_f64), (100.0, 95.0), (3.0, 2.9)] {
            let naive = x * (x / m).ln() + m - x;
            assert!((deviance(x, m) - naive).abs() < 1e-12);
        }
        assert_eq!(deviance(0.0, 2.5), 2.5);
        assert_eq!(deviance(4.0, 4.0), 0.0);
    }
}

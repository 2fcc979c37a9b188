//! 256-bit brute-force reference evaluations. Every series is summed term by
//! term from its textbook definition, truncated at `max(10 lambda, 200)`
//! terms, with no use of the crate's own code paths.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};

pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

pub struct Oracle {
    cc: Consts,
}

pub fn to_f64(x: &BigFloat) -> f64 {
    format!("{x}").parse().expect("decimal rendering of a finite BigFloat")
}

fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

fn int(k: u64) -> BigFloat {
    BigFloat::from_u64(k, PREC)
}

pub fn terms_for(lambda: f64) -> u64 {
    (10.0 * lambda).max(200.0).ceil() as u64
}

impl Oracle {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("constants cache"),
        }
    }

    fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(PREC, RM, &mut self.cc)
    }

    fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(PREC, RM, &mut self.cc)
    }

    /// `p_k = e^{-lambda} lambda^k / k!` for `k = 0..=count`, by the product
    /// recursion `p_k = p_{k-1} lambda / k`.
    pub fn pmf_terms(&mut self, lambda: f64, count: u64) -> Vec<BigFloat> {
        let l = big(lambda);
        let mut p = self.exp(&l.neg());
        let mut out = Vec::with_capacity(count as usize + 1);
        out.push(p.clone());
        for k in 1..=count {
            p = p.mul(&l, PREC, RM).div(&int(k), PREC, RM);
            out.push(p.clone());
        }
        out
    }

    /// `ln k!` for `k = 0..=count` by accumulating `ln j`.
    pub fn log_factorials(&mut self, count: u64) -> Vec<BigFloat> {
        let mut acc = big(0.0);
        let mut out = vec![acc.clone()];
        for j in 1..=count {
            acc = acc.add(&self.ln(&int(j)), PREC, RM);
            out.push(acc.clone());
        }
        out
    }

    pub fn pmf(&mut self, lambda: f64, k: u64) -> f64 {
        to_f64(&self.pmf_terms(lambda, k)[k as usize])
    }

    pub fn window_sum(&mut self, lambda: f64, m: u64, n: u64) -> f64 {
        let p = self.pmf_terms(lambda, m + n);
        let mut s = big(0.0);
        for t in &p[m as usize..] {
            s = s.add(t, PREC, RM);
        }
        to_f64(&s)
    }

    /// `1 - sum_{k=m}^{m+n} p_k`, exact at this precision.
    pub fn outside_window(&mut self, lambda: f64, m: u64, n: u64) -> f64 {
        let p = self.pmf_terms(lambda, m + n);
        let mut s = big(1.0);
        for t in &p[m as usize..] {
            s = s.sub(t, PREC, RM);
        }
        to_f64(&s)
    }

    /// `sum_{k>n} p_k` as `1 - sum_{k<=n} p_k`, exact at this precision.
    pub fn upper_tail(&mut self, lambda: f64, n: u64) -> f64 {
        let p = self.pmf_terms(lambda, n);
        let mut s = big(1.0);
        for t in &p {
            s = s.sub(t, PREC, RM);
        }
        to_f64(&s)
    }

    /// `lambda (1 - ln lambda) + e^{-lambda} sum_{k>=2} lambda^k ln k! / k!`.
    pub fn shannon(&mut self, lambda: f64) -> f64 {
        let count = terms_for(lambda);
        let p = self.pmf_terms(lambda, count);
        let lf = self.log_factorials(count);
        let l = big(lambda);
        let mut s = l.mul(&big(1.0).sub(&self.ln(&l), PREC, RM), PREC, RM);
        for k in 2..=count as usize {
            s = s.add(&p[k].mul(&lf[k], PREC, RM), PREC, RM);
        }
        to_f64(&s)
    }

    /// `-sum p_k ln p_k`, a second route to the Shannon entropy.
    pub fn shannon_direct(&mut self, lambda: f64) -> f64 {
        let count = terms_for(lambda);
        let p = self.pmf_terms(lambda, count);
        let mut s = big(0.0);
        for t in &p {
            if t.is_zero() {
                continue;
            }
            let l = self.ln(t);
            s = s.sub(&t.mul(&l, PREC, RM), PREC, RM);
        }
        to_f64(&s)
    }

    /// `-ln lambda + e^{-lambda} sum_{k>=1} lambda^k ln(k+1) / k!`.
    pub fn shannon_prime(&mut self, lambda: f64) -> f64 {
        let count = terms_for(lambda);
        let p = self.pmf_terms(lambda, count);
        let mut s = self.ln(&big(lambda)).neg();
        for k in 1..=count {
            let w = self.ln(&int(k + 1));
            s = s.add(&p[k as usize].mul(&w, PREC, RM), PREC, RM);
        }
        to_f64(&s)
    }

    /// `-1/lambda + e^{-lambda} sum_{k>=0} lambda^k ln(1 + 1/(k+1)) / k!`.
    pub fn shannon_second(&mut self, lambda: f64) -> f64 {
        let count = terms_for(lambda);
        let p = self.pmf_terms(lambda, count);
        let mut s = big(1.0).div(&big(lambda), PREC, RM).neg();
        for k in 0..=count {
            let ratio = int(k + 2).div(&int(k + 1), PREC, RM);
            let w = self.ln(&ratio);
            s = s.add(&p[k as usize].mul(&w, PREC, RM), PREC, RM);
        }
        to_f64(&s)
    }

    fn psi_big(&mut self, alpha: f64, lambda: f64) -> BigFloat {
        let count = terms_for(lambda);
        let p = self.pmf_terms(lambda, count);
        let a = big(alpha);
        let mut s = big(0.0);
        for t in &p {
            if t.is_zero() {
                continue;
            }
            let e = a.mul(&self.ln(t), PREC, RM);
            s = s.add(&self.exp(&e), PREC, RM);
        }
        s
    }

    /// `sum_k p_k^alpha`.
    pub fn psi(&mut self, alpha: f64, lambda: f64) -> f64 {
        let s = self.psi_big(alpha, lambda);
        to_f64(&s)
    }

    /// `ln psi / (1 - alpha)`.
    pub fn renyi(&mut self, alpha: f64, lambda: f64) -> f64 {
        let s = self.psi_big(alpha, lambda);
        let l = self.ln(&s);
        to_f64(&l.div(&big(1.0).sub(&big(alpha), PREC, RM), PREC, RM))
    }

    /// `sum_k (k - lambda) lambda^{alpha k - 1} / (k!)^alpha`, term by term.
    pub fn r_statistic(&mut self, alpha: f64, lambda: f64) -> f64 {
        let count = terms_for(lambda);
        let lf = self.log_factorials(count);
        let a = big(alpha);
        let l = big(lambda);
        let ln_l = self.ln(&l);
        let mut s = big(0.0);
        for k in 0..=count {
            // (alpha k - 1) ln lambda - alpha ln k!
            let e = a
                .mul(&int(k), PREC, RM)
                .sub(&big(1.0), PREC, RM)
                .mul(&ln_l, PREC, RM)
                .sub(&a.mul(&lf[k as usize], PREC, RM), PREC, RM);
            let w = int(k).sub(&l, PREC, RM);
            s = s.add(&w.mul(&self.exp(&e), PREC, RM), PREC, RM);
        }
        to_f64(&s)
    }

    /// Both sides of the series inequality that is equivalent to the sign
    /// of `R`: `sum_{k>=1} lambda^{alpha k - 1} k^{1-alpha} / ((k-1)!)^alpha`
    /// and `sum_{k>=0} lambda^{alpha k} / (k!)^alpha`.
    pub fn lemma2_sides(&mut self, alpha: f64, lambda: f64) -> (f64, f64) {
        let count = terms_for(lambda);
        let lf = self.log_factorials(count);
        let a = big(alpha);
        let ln_l = self.ln(&big(lambda));
        let mut left = big(0.0);
        let mut right = big(0.0);
        for k in 0..=count {
            let kk = int(k);
            let e = a
                .mul(&kk, PREC, RM)
                .mul(&ln_l, PREC, RM)
                .sub(&a.mul(&lf[k as usize], PREC, RM), PREC, RM);
            right = right.add(&self.exp(&e), PREC, RM);
            if k >= 1 {
                let ln_k = self.ln(&kk);
                let e = a
                    .mul(&kk, PREC, RM)
                    .sub(&big(1.0), PREC, RM)
                    .mul(&ln_l, PREC, RM)
                    .add(&big(1.0).sub(&a, PREC, RM).mul(&ln_k, PREC, RM), PREC, RM)
                    .sub(&a.mul(&lf[k as usize - 1], PREC, RM), PREC, RM);
                left = left.add(&self.exp(&e), PREC, RM);
            }
        }
        (to_f64(&left), to_f64(&right))
    }

    /// Modified Bessel function `I_0(x) = sum_k (x/2)^{2k} / (k!)^2`, by its
    /// own power series.
    pub fn bessel_i0(&mut self, x: f64) -> f64 {
        let q = big(x).div(&big(2.0), PREC, RM);
        let q2 = q.mul(&q, PREC, RM);
        let mut term = big(1.0);
        let mut s = big(1.0);
        let count = (5.0 * x).max(200.0) as u64;
        for k in 1..=count {
            let kk = int(k);
            term = term
                .mul(&q2, PREC, RM)
                .div(&kk.mul(&kk, PREC, RM), PREC, RM);
            s = s.add(&term, PREC, RM);
        }
        to_f64(&s)
    }

    /// `e^{-x} I_0(x)` in high precision.
    pub fn scaled_bessel_i0(&mut self, x: f64) -> f64 {
        let q = big(x).div(&big(2.0), PREC, RM);
        let q2 = q.mul(&q, PREC, RM);
        let mut term = big(1.0);
        let mut s = big(1.0);
        let count = (5.0 * x).max(200.0) as u64;
        for k in 1..=count {
            let kk = int(k);
            term = term
                .mul(&q2, PREC, RM)
                .div(&kk.mul(&kk, PREC, RM), PREC, RM);
            s = s.add(&term, PREC, RM);
        }
        let scale = self.exp(&big(-x));
        to_f64(&s.mul(&scale, PREC, RM))
    }

    /// `ln n!` in high precision.
    pub fn log_factorial(&mut self, n: u64) -> f64 {
        to_f64(&self.log_factorials(n)[n as usize])
    }

    /// `n!` rounded once to binary64.
    pub fn factorial(&mut self, n: u64) -> f64 {
        let mut f = big(1.0);
        for j in 2..=n {
            f = f.mul(&int(j), PREC, RM);
        }
        to_f64(&f)
    }

    /// `e^{-lambda} (ln lambda)^{-1} sum_{k=1}^{m} lambda^k ln(k+1) / k!`.
    pub fn head_sum_scaled(&mut self, lambda: f64, m: u64) -> f64 {
        let p = self.pmf_terms(lambda, m);
        let mut s = big(0.0);
        for k in 1..=m {
            let w = self.ln(&int(k + 1));
            s = s.add(&p[k as usize].mul(&w, PREC, RM), PREC, RM);
        }
        let d = self.ln(&big(lambda));
        to_f64(&s.div(&d, PREC, RM))
    }
}

//! Browser bindings for the interactive demo page in `www/`.
//!
//! Curves come back as flat `Float64Array`s so the page can plot them
//! without any parsing.

use entropykit::majorization::{certificate_length, check_majorization, karamata_gap, rearranged_prefix, DEFAULT_TOLERANCE};
use entropykit::{psi, renyi_entropy, shannon_entropy, Intensity, Precision, RenyiOrder};
use wasm_bindgen::prelude::*;

const EPS: f64 = 1e-12;
const MAX_POINTS: usize = 5_000;
const MAX_LAMBDA: f64 = 200.0;

fn grid(lambda_max: f64, points: usize) -> Result<Vec<f64>, String> {
    if !(lambda_max.is_finite() && lambda_max > 0.0 && lambda_max <= MAX_LAMBDA) {
        return Err(format!("lambda_max must be in (0, {MAX_LAMBDA}]"));
    }
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must be in 2..={MAX_POINTS}"));
    }
    let step = lambda_max / points as f64;
    Ok((1..=points).map(|i| i as f64 * step).collect())
}

fn intensity(x: f64) -> Result<Intensity, String> {
    Intensity::new(x).map_err(|e| e.to_string())
}

fn order(x: f64) -> Result<RenyiOrder, String> {
    RenyiOrder::new(x).map_err(|e| e.to_string())
}

/// `[lambda, H_S, H_R(alpha)]` triples on `points` equally spaced
/// intensities in `(0, lambda_max]`.
#[wasm_bindgen]
pub fn entropy_curves(alpha: f64, lambda_max: f64, points: usize) -> Result<Vec<f64>, String> {
    let a = order(alpha)?;
    let p = Precision::new(EPS);
    let mut out = Vec::with_capacity(3 * points);
    for l in grid(lambda_max, points)? {
        let lambda = intensity(l)?;
        out.push(l);
        out.push(shannon_entropy(lambda, p).map_err(|e| e.to_string())?.value);
        out.push(renyi_entropy(a, lambda, p).map_err(|e| e.to_string())?.value);
    }
    Ok(out)
}

/// `psi(alpha, lambda)` for every alpha, row-major by alpha; each row holds
/// `points` values on the same grid as [`entropy_curves`].
#[wasm_bindgen]
pub fn psi_curves(alphas: Vec<f64>, lambda_max: f64, points: usize) -> Result<Vec<f64>, String> {
    if alphas.is_empty() || alphas.len() > 32 {
        return Err("between 1 and 32 orders".into());
    }
    let lambdas = grid(lambda_max, points)?;
    let mut out = Vec::with_capacity(alphas.len() * points);
    for &alpha in &alphas {
        let a = order(alpha)?;
        for &l in &lambdas {
            out.push(psi(a, intensity(l)?, EPS).map_err(|e| e.to_string())?.value);
        }
    }
    Ok(out)
}

/// Rearranged pmf vectors at two intensities, their majorization verdict
/// and the Karamata gap for `f(x) = x^alpha`.
#[wasm_bindgen]
pub struct MajorizationDemo {
    first: Vec<f64>,
    second: Vec<f64>,
    majorizes: bool,
    gap: f64,
}

#[wasm_bindgen]
impl MajorizationDemo {
    /// `(q_0, ..., q_n, r_n)` at the smaller intensity.
    #[wasm_bindgen(getter)]
    pub fn first(&self) -> Vec<f64> {
        self.first.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn second(&self) -> Vec<f64> {
        self.second.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn majorizes(&self) -> bool {
        self.majorizes
    }

    /// `sum f(first) - sum f(second)`; NaN when the first vector does not
    /// majorize the second.
    #[wasm_bindgen(getter)]
    pub fn gap(&self) -> f64 {
        self.gap
    }
}

#[wasm_bindgen]
pub fn majorization_demo(lambda1: f64, lambda2: f64, alpha: f64) -> Result<MajorizationDemo, String> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err("alpha must be > 0".into());
    }
    let (lo, hi) = if lambda1 <= lambda2 { (lambda1, lambda2) } else { (lambda2, lambda1) };
    if hi > MAX_LAMBDA {
        return Err(format!("intensities must be at most {MAX_LAMBDA}"));
    }
    let (lo, hi) = (intensity(lo)?, intensity(hi)?);
    let n = certificate_length(hi);
    let first = rearranged_prefix(lo, n).extended();
    let second = rearranged_prefix(hi, n).extended();
    let majorizes = check_majorization(&first, &second, DEFAULT_TOLERANCE)
        .map_err(|e| e.to_string())?
        .majorizes;
    let gap = if majorizes {
        karamata_gap(|x| x.powf(alpha), 0.0..=1.0, &first, &second).map_err(|e| e.to_string())?
    } else {
        f64::NAN
    };
    Ok(MajorizationDemo {
        first,
        second,
        majorizes,
        gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_curves_layout() {
        let v = entropy_curves(2.0, 10.0, 50).unwrap();
        assert_eq!(v.len(), 150);
        assert_eq!(v[0], 0.2);
        assert_eq!(v[147], 10.0);
        for t in v.chunks(3) {
            // Renyi entropy of order 2 lies below the Shannon entropy
            assert!(t[2] < t[1]);
        }
        assert!(v.chunks(3).collect::<Vec<_>>().windows(2).all(|w| w[1][1] > w[0][1]));
    }

    #[test]
    fn psi_curves_layout() {
        let v = psi_curves(vec![0.5, 1.0, 2.0], 5.0, 10).unwrap();
        assert_eq!(v.len(), 30);
        assert!(v[..10].iter().all(|&x| x > 1.0));
        assert!(v[10..20].iter().all(|&x| (x - 1.0).abs() < 1e-12));
        assert!(v[20..].iter().all(|&x| x < 1.0));
    }

    #[test]
    fn demo_orders_its_arguments() {
        let d = majorization_demo(5.0, 2.0, 2.0).unwrap();
        assert!(d.majorizes());
        assert!(d.gap() > 0.0);
        assert_eq!(d.first().len(), d.second().len());
        assert!(d.first()[0] > d.second()[0]);
        let d = majorization_demo(2.0, 5.0, 0.5).unwrap();
        assert!(d.gap() < 0.0);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(entropy_curves(0.0, 10.0, 50).is_err());
        assert!(entropy_curves(2.0, -1.0, 50).is_err());
        assert!(entropy_curves(2.0, 10.0, 1).is_err());
        assert!(psi_curves(vec![], 10.0, 10).is_err());
        assert!(majorization_demo(1.0, 1e6, 2.0).is_err());
        assert!(majorization_demo(0.0, 1.0, 2.0).is_err());
    }
}

//! The Archimedean analogue `Σ e^{iξ/(n₁n₂)}` over dyadic ranges.

use num_complex::Complex64;

use super::{CompensatedSum, ComplexSum};
use crate::error::{Error, Result};

/// Σ over `N₁ < n₁ <= 2N₁`, `N₂ < n₂ <= 2N₂` of `exp(iξ/(n₁n₂))`.
pub fn archimedean_bilinear(xi: f64, n1: u64, n2: u64) -> ComplexSum {
    let mut acc = CompensatedSum::new();
    for a in n1 + 1..=2 * n1 {
        for b in n2 + 1..=2 * n2 {
            let (s, c) = (xi / (a as f64 * b as f64)).sin_cos();
            acc.add(Complex64::new(c, s));
        }
    }
    ComplexSum::new(acc.value(), n1 * n2)
}

fn bracket(ratio: f64, n: f64, k: u32) -> f64 {
    ratio * n.powi(-2 * k as i32) + n.powi(2 * (k as i32 - 1)) / ratio
}

/// The saving factor γ attached to `archimedean_bilinear`.
pub fn archimedean_gamma(xi: f64, n1: u64, n2: u64, k1: u32, k2: u32) -> Result<f64> {
    if xi == 0.0 {
        return Err(Error::domain("ξ must be nonzero"));
    }
    if k1 == 0 || k2 == 0 {
        return Err(Error::domain("k1, k2 must be at least 1"));
    }
    if n1 == 0 || n2 == 0 {
        return Err(Error::domain("N1, N2 must be at least 1"));
    }
    let ratio = xi.abs() / (n1 as f64 * n2 as f64);
    let f1 = bracket(ratio, n1 as f64, k1);
    let f2 = bracket(ratio, n2 as f64, k2);
    Ok((f1 * f2).powf(1.0 / (4.0 * k1 as f64 * k2 as f64)))
}

/// The unique `k >= 1` with `N^{2(k−1)} <= ratio < N^{2k}`.
pub fn choose_archimedean_k(ratio: f64, n: u64) -> Result<u32> {
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::domain(format!("ratio must be positive and finite, got {ratio}")));
    }
    if ratio < 1.0 {
        return Err(Error::domain(format!("ratio {ratio} is below 1, no k >= 1 qualifies")));
    }
    if n < 2 {
        return Err(Error::domain("N must be at least 2"));
    }
    let step = (n as f64).powi(2);
    let mut k = 1u32;
    let mut upper = step;
    while ratio >= upper {
        k += 1;
        upper *= step;
    }
    Ok(k)
}

//! Finite-field exponential sums evaluated term by term.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::accum::{e_p, CompensatedSum};
use crate::error::{Error, Result};
use crate::modmath::{batch_inverse, primes_upto, Interval, PrimeModulus};

/// Default cap on the number of summands of a multilinear sum.
pub const MULTILINEAR_MAX_TERMS: u64 = 1_000_000_000;

/// A complex value together with the number of unimodular terms it sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexSum {
    pub value: Complex64,
    pub terms: u64,
}

impl ComplexSum {
    pub fn new(value: Complex64, terms: u64) -> Self {
        ComplexSum { value, terms }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    pub fn modulus(&self) -> f64 {
        self.value.norm()
    }

    /// `|S| / terms`, the saving over the trivial bound (0 for an empty sum).
    pub fn normalized(&self) -> f64 {
        if self.terms == 0 {
            0.0
        } else {
            self.modulus() / self.terms as f64
        }
    }
}

/// Coefficients `α(x)` with `|α(x)| <= 1`, aligned with an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq(Vec<Complex64>);

impl CoeffSeq {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|z| z.norm() > 1.0 + 1e-12) {
            return Err(Error::domain(format!("coefficient {i} has modulus above 1")));
        }
        Ok(CoeffSeq(values))
    }

    pub fn ones(len: usize) -> Self {
        CoeffSeq(vec![Complex64::new(1.0, 0.0); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.0
    }
}

fn check_len(interval: &Interval, coeffs: &CoeffSeq) -> Result<()> {
    if coeffs.len() as u64 != interval.len() {
        return Err(Error::domain(format!(
            "coefficient length {} does not match interval length {}",
            coeffs.len(),
            interval.len()
        )));
    }
    Ok(())
}

/// Σ_{x∈I} α(x) e_p(a·x*·c) for a fixed multiplier `c`.
fn weighted_linear(a: u64, inv: &[u64], alpha: &[Complex64], p: PrimeModulus) -> Complex64 {
    inv.iter()
        .zip(alpha)
        .map(|(&xi, &w)| w * e_p(p.mul(a, xi), p.get()))
        .collect::<CompensatedSum>()
        .value()
}

/// Σ_{x∈I} e_p(a x*).
pub fn linear_incomplete(a: u64, interval: &Interval, p: PrimeModulus) -> Result<ComplexSum> {
    let inv = interval.inverses(p)?;
    let a = a % p.get();
    let value = inv
        .iter()
        .map(|&xi| e_p(p.mul(a, xi), p.get()))
        .collect::<CompensatedSum>()
        .value();
    Ok(ComplexSum::new(value, interval.len()))
}

/// Σ_{x₁∈I₁} Σ_{x₂∈I₂} α₁(x₁) α₂(x₂) e_p(a x₁* x₂*).
pub fn bilinear(
    a: u64,
    i1: &Interval,
    i2: &Interval,
    alpha1: &CoeffSeq,
    alpha2: &CoeffSeq,
    p: PrimeModulus,
) -> Result<ComplexSum> {
    check_len(i1, alpha1)?;
    check_len(i2, alpha2)?;
    let inv1 = i1.inverses(p)?;
    let inv2 = i2.inverses(p)?;
    let a = a % p.get();
    let mut acc = CompensatedSum::new();
    for (&y1, &w1) in inv1.iter().zip(alpha1.values()) {
        let inner = weighted_linear(p.mul(a, y1), &inv2, alpha2.values(), p);
        acc.add(w1 * inner);
    }
    Ok(ComplexSum::new(acc.value(), i1.len() * i2.len()))
}

/// Σ α₁(x₁)⋯α_n(x_n) e_p(a x₁*⋯x_n*) with the default term budget.
pub fn multilinear(
    a: u64,
    intervals: &[Interval],
    coeffs: &[CoeffSeq],
    p: PrimeModulus,
) -> Result<ComplexSum> {
    multilinear_with_budget(a, intervals, coeffs, p, MULTILINEAR_MAX_TERMS)
}

/// Multilinear sum; for `n > 2` the first `n − 1` variables are folded into
/// the weighted distribution of their inverse products before the last
/// variable is summed, so the cost is `|support| · N_n` rather than `Π Nᵢ`.
pub fn multilinear_with_budget(
    a: u64,
    intervals: &[Interval],
    coeffs: &[CoeffSeq],
    p: PrimeModulus,
    max_terms: u64,
) -> Result<ComplexSum> {
    if intervals.is_empty() {
        return Err(Error::domain("need at least one interval"));
    }
    if intervals.len() != coeffs.len() {
        return Err(Error::domain("one coefficient sequence per interval is required"));
    }
    for (i, c) in intervals.iter().zip(coeffs) {
        check_len(i, c)?;
    }
    let terms = intervals
        .iter()
        .try_fold(1u64, |acc, i| acc.checked_mul(i.len()))
        .filter(|&t| t <= max_terms)
        .ok_or_else(|| Error::resource(format!("more than {max_terms} terms")))?;
    let a = a % p.get();
    let n = intervals.len();
    if n == 2 {
        return bilinear(a, &intervals[0], &intervals[1], &coeffs[0], &coeffs[1], p);
    }
    let inverses = intervals
        .iter()
        .map(|i| i.inverses(p))
        .collect::<Result<Vec<_>>>()?;
    // weight of each partial product x₁*⋯x_{n-1}*
    let mut partial: BTreeMap<u64, Complex64> = BTreeMap::from([(1, Complex64::new(1.0, 0.0))]);
    for (inv, alpha) in inverses[..n - 1].iter().zip(coeffs) {
        let mut next: BTreeMap<u64, Complex64> = BTreeMap::new();
        for (&mu, &w) in &partial {
            for (&y, &c) in inv.iter().zip(alpha.values()) {
                *next.entry(p.mul(mu, y)).or_default() += w * c;
            }
        }
        partial = next;
    }
    let (last_inv, last_alpha) = (&inverses[n - 1], coeffs[n - 1].values());
    let mut acc = CompensatedSum::new();
    for (&mu, &w) in &partial {
        acc.add(w * weighted_linear(p.mul(a, mu), last_inv, last_alpha, p));
    }
    Ok(ComplexSum::new(acc.value(), terms))
}

/// Σ over primes `x <= N` of `e_p(a (x^r)*)`.
pub fn prime_sum_power_r(a: u64, n: u64, r: u32, p: PrimeModulus) -> Result<ComplexSum> {
    if r == 0 {
        return Err(Error::domain("r must be at least 1"));
    }
    if n >= p.get() {
        return Err(Error::domain(format!("need N < p, got N = {n}, p = {p}")));
    }
    let primes = primes_upto(n);
    let powers: Vec<u64> = primes.iter().map(|&q| p.pow(q, r as u64)).collect();
    let inv = batch_inverse(&powers, p)?;
    let a = a % p.get();
    let value = inv
        .iter()
        .map(|&y| e_p(p.mul(a, y), p.get()))
        .collect::<CompensatedSum>()
        .value();
    Ok(ComplexSum::new(value, primes.len() as u64))
}

/// The complete Kloosterman sum Σ_{x=1}^{p−1} e_p(a x* + b x).
pub fn complete_kloosterman(a: u64, b: u64, p: PrimeModulus) -> ComplexSum {
    let m = p.get();
    let (a, b) = (a % m, b % m);
    let mut acc = CompensatedSum::new();
    const BLOCK: u64 = 1 << 16;
    let mut start = 1;
    while start < m {
        let end = (start + BLOCK).min(m);
        let xs: Vec<u64> = (start..end).collect();
        let inv = batch_inverse(&xs, p).expect("block excludes zero");
        for (&x, &xi) in xs.iter().zip(&inv) {
            acc.add(e_p(p.add(p.mul(a, xi), p.mul(b, x)), m));
        }
        start = end;
    }
    ComplexSum::new(acc.value(), m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn iv(a: u64, n: u64) -> Interval {
        Interval::new(a, n).unwrap()
    }

    fn close(z: Complex64, re: f64, im: f64, tol: f64) -> bool {
        (z.re - re).abs() <= tol && (z.im - im).abs() <= tol
    }

    #[test]
    fn linear_examples() {
        let s = linear_incomplete(0, &iv(0, 9), p(11)).unwrap();
        assert!(close(s.value, 9.0, 0.0, 1e-12));
        let s = linear_incomplete(1, &iv(0, 6), p(7)).unwrap();
        assert!(close(s.value, -1.0, 0.0, 1e-9));
        let s = linear_incomplete(1, &iv(0, 3), p(7)).unwrap();
        let direct = e_p(1, 7) + e_p(4, 7) + e_p(5, 7);
        assert!((s.value - direct).norm() < 1e-12);
        assert!((s.modulus() - 0.801_937_735_8).abs() < 1e-9);
        assert!(linear_incomplete(1, &iv(6, 1), p(7)).is_err());
    }

    #[test]
    fn bilinear_examples() {
        let ones2 = CoeffSeq::ones(2);
        let s = bilinear(0, &iv(0, 2), &iv(0, 2), &ones2, &ones2, p(5)).unwrap();
        assert!(close(s.value, 4.0, 0.0, 1e-12));
        let s = bilinear(1, &iv(0, 2), &iv(0, 2), &ones2, &ones2, p(5)).unwrap();
        assert!(close(s.value, -1.0, -1.1756, 1e-4));
        let one = CoeffSeq::ones(1);
        let s = bilinear(1, &iv(0, 1), &iv(0, 1), &one, &one, p(7)).unwrap();
        assert!((s.value - e_p(1, 7)).norm() < 1e-12);
        assert!(matches!(
            bilinear(1, &iv(0, 2), &iv(0, 2), &one, &ones2, p(5)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn coefficient_bound_enforced() {
        assert!(CoeffSeq::new(vec![Complex64::new(0.8, 0.6)]).is_ok());
        assert!(CoeffSeq::new(vec![Complex64::new(1.0, 0.1)]).is_err());
    }

    #[test]
    fn multilinear_examples() {
        let ivs = vec![iv(0, 2); 3];
        let cs = vec![CoeffSeq::ones(2); 3];
        let s = multilinear(1, &ivs, &cs, p(5)).unwrap();
        assert!(close(s.value, -2.0, -3.078, 1e-3));
        assert_eq!(s.terms, 8);
        let s = multilinear(0, &ivs, &cs, p(5)).unwrap();
        assert!(close(s.value, 8.0, 0.0, 1e-12));
        let lin = linear_incomplete(3, &iv(2, 7), p(13)).unwrap();
        let one = multilinear(3, &[iv(2, 7)], &[CoeffSeq::ones(7)], p(13)).unwrap();
        assert!((lin.value - one.value).norm() < 1e-12);
        assert!(matches!(
            multilinear_with_budget(1, &ivs, &cs, p(5), 7),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn prime_sum_examples() {
        let s = prime_sum_power_r(0, 10, 1, p(101)).unwrap();
        assert!(close(s.value, 4.0, 0.0, 1e-12));
        let s = prime_sum_power_r(1, 6, 1, p(7)).unwrap();
        assert!(close(s.value, -2.0243, -0.9749, 1e-3));
        assert!(prime_sum_power_r(1, 7, 1, p(7)).is_err());
    }

    #[test]
    fn complete_examples() {
        let s = complete_kloosterman(0, 0, p(11));
        assert!(close(s.value, 10.0, 0.0, 1e-12));
        let s = complete_kloosterman(0, 1, p(11));
        assert!(close(s.value, -1.0, 0.0, 1e-12));
        let s = complete_kloosterman(1, 1, p(5));
        assert!(close(s.value, 0.3820, 0.0, 1e-4));
    }
}

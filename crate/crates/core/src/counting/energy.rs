//! Additive energies of inverse intervals and related sumset statistics.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use super::distribution::{sum_distribution, Backend, ResidueDistribution};
use crate::error::{Error, Result};
use crate::modmath::{batch_inverse, primes_upto, Interval, PrimeModulus};

/// An exact energy count together with the exponent it is compared against.
#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    /// J₂ₖ, the number of ordered 2k-tuples with equal k-fold inverse sums.
    pub count: BigUint,
    pub n: u64,
    pub k: u32,
    pub p: u64,
    pub predicted_exponent: Ratio<u64>,
    /// `ln J / ln N`; NaN when `J = 0` or `N < 2`.
    pub measured_exponent: f64,
    pub wall_time: Duration,
}

impl CountReport {
    fn new(count: BigUint, n: u64, k: u32, p: PrimeModulus, predicted: Ratio<u64>, started: Instant) -> Self {
        CountReport {
            measured_exponent: log_ratio(&count, n),
            count,
            n,
            k,
            p: p.get(),
            predicted_exponent: predicted,
            wall_time: started.elapsed(),
        }
    }

    pub fn predicted_exponent_f64(&self) -> f64 {
        *self.predicted_exponent.numer() as f64 / *self.predicted_exponent.denom() as f64
    }
}

/// `ln(count) / ln(n)`, or NaN outside `count >= 1, n >= 2`.
pub fn log_ratio(count: &BigUint, n: u64) -> f64 {
    if count.is_zero() || n < 2 {
        return f64::NAN;
    }
    ln_big(count) / (n as f64).ln()
}

pub(crate) fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().map_or(f64::NAN, f64::ln)
    } else {
        let shift = bits - 900;
        (x >> shift).to_f64().map_or(f64::NAN, f64::ln) + shift as f64 * std::f64::consts::LN_2
    }
}

/// The exponent `2k²/(k+1)` of the general energy bound.
pub fn general_exponent(k: u32) -> Ratio<u64> {
    Ratio::new(2 * (k as u64).pow(2), k as u64 + 1)
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        Err(Error::domain("k must be at least 1"))
    } else {
        Ok(())
    }
}

/// T(λ) = #{(x₁,…,x_k) ∈ I^k : x₁⁻¹ + … + x_k⁻¹ ≡ λ}.
pub fn inverse_sum_distribution(
    interval: &Interval,
    k: u32,
    p: PrimeModulus,
    backend: Backend,
) -> Result<ResidueDistribution> {
    check_k(k)?;
    let inv = interval.inverses(p)?;
    let sets = vec![inv; k as usize];
    sum_distribution(&sets, p, backend)
}

/// J₂ₖ for an arbitrary interval, with the general exponent `2k²/(k+1)`.
pub fn count_j2k(interval: &Interval, k: u32, p: PrimeModulus, backend: Backend) -> Result<CountReport> {
    let started = Instant::now();
    let dist = inverse_sum_distribution(interval, k, p, backend)?;
    Ok(CountReport::new(dist.energy(), interval.len(), k, p, general_exponent(k), started))
}

/// J₂ₖ with every variable restricted to the primes in `[1, N]`.
///
/// The reported exponent is `k`, the size of the diagonal, which the bound
/// `(N^{2k-1}/p + 1) N^k` reduces to once `N^{2k-1} < p`.
pub fn count_j2k_prime(n: u64, k: u32, p: PrimeModulus, backend: Backend) -> Result<CountReport> {
    check_k(k)?;
    if n >= p.get() {
        return Err(Error::domain(format!("need N < p, got N = {n}, p = {p}")));
    }
    let started = Instant::now();
    let primes = primes_upto(n);
    let inv = batch_inverse(&primes, p)?;
    let count = if inv.is_empty() {
        BigUint::zero()
    } else {
        sum_distribution(&vec![inv; k as usize], p, backend)?.energy()
    };
    Ok(CountReport::new(count, n, k, p, Ratio::from_integer(k as u64), started))
}

/// |k(I⁻¹)|: the number of distinct k-fold sums of inverses.
pub fn sumset_size(interval: &Interval, k: u32, p: PrimeModulus, backend: Backend) -> Result<u64> {
    Ok(inverse_sum_distribution(interval, k, p, backend)?.support_size())
}

/// Ordered solutions of `x⁻¹ + y⁻¹ + z⁻¹ ≡ λ` with `x, y, z ∈ I`.
///
/// The flag is set when `λ ∈ I⁻¹ ∪ {0}`, where the count can be as large as
/// `|I|` through trivial families; the count is returned either way.
pub fn ternary_count(interval: &Interval, lambda: u64, p: PrimeModulus) -> Result<(u64, bool)> {
    let inv = interval.inverses(p)?;
    let lambda = lambda % p.get();
    let mut pairs: HashMap<u64, u64> = HashMap::with_capacity(inv.len() * inv.len());
    for &a in &inv {
        for &b in &inv {
            *pairs.entry(p.add(a, b)).or_insert(0) += 1;
        }
    }
    let count = inv
        .iter()
        .map(|&z| pairs.get(&p.sub(lambda, z)).copied().unwrap_or(0))
        .sum();
    let inverse_set: HashSet<u64> = inv.iter().copied().collect();
    let flagged = lambda == 0 || inverse_set.contains(&lambda);
    Ok((count, flagged))
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

    #[test]
    fn distribution_examples() {
        for b in [Backend::Dense, Backend::Sparse] {
            let d1 = inverse_sum_distribution(&iv(0, 3), 1, p(7), b).unwrap();
            assert_eq!(d1.entries(), vec![(1, 1), (4, 1), (5, 1)]);
            let d2 = inverse_sum_distribution(&iv(0, 3), 2, p(7), b).unwrap();
            assert_eq!(d2.entries(), vec![(1, 1), (2, 3), (3, 1), (5, 2), (6, 2)]);
        }
        let d = inverse_sum_distribution(&iv(0, 20), 1, p(101), Backend::Auto).unwrap();
        assert_eq!(d.support_size(), 20);
        assert!(inverse_sum_distribution(&iv(5, 3), 1, p(7), Backend::Auto).is_err());
        assert!(inverse_sum_distribution(&iv(0, 3), 0, p(7), Backend::Auto).is_err());
    }

    #[test]
    fn j2k_examples() {
        let r = count_j2k(&iv(0, 3), 2, p(7), Backend::Auto).unwrap();
        assert_eq!(r.count, BigUint::from(19u32));
        for n in 1..20 {
            let r = count_j2k(&iv(0, n), 1, p(101), Backend::Auto).unwrap();
            assert_eq!(r.count, BigUint::from(n));
        }
        assert_eq!(general_exponent(2), Ratio::new(8, 3));
        assert_eq!(general_exponent(3), Ratio::new(9, 2));
    }

    #[test]
    fn measured_exponent_is_log_ratio() {
        let r = count_j2k(&iv(0, 10), 2, p(101), Backend::Auto).unwrap();
        let j = r.count.to_f64().unwrap();
        assert!((r.measured_exponent - j.ln() / 10f64.ln()).abs() < 1e-12);
        assert!(log_ratio(&BigUint::zero(), 10).is_nan());
        let huge = BigUint::from(3u32).pow(2000);
        assert!((ln_big(&huge) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn prime_restricted_examples() {
        let r = count_j2k_prime(10, 1, p(101), Backend::Auto).unwrap();
        assert_eq!(r.count, BigUint::from(4u32));
        let r = count_j2k_prime(6, 2, p(101), Backend::Auto).unwrap();
        assert_eq!(r.count, BigUint::from(15u32));
        let r = count_j2k_prime(1, 2, p(7), Backend::Auto).unwrap();
        assert_eq!(r.count, BigUint::zero());
    }

    #[test]
    fn ternary_examples() {
        assert_eq!(ternary_count(&iv(0, 3), 86, p(101)).unwrap(), (6, false));
        assert_eq!(ternary_count(&iv(0, 3), 3, p(101)).unwrap(), (1, false));
        assert_eq!(ternary_count(&iv(0, 3), 0, p(101)).unwrap(), (0, true));
        // λ = 1⁻¹ is in I⁻¹
        assert!(ternary_count(&iv(0, 3), 1, p(101)).unwrap().1);
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(sumset_size(&iv(0, 3), 1, p(7), Backend::Auto).unwrap(), 3);
        assert_eq!(sumset_size(&iv(0, 3), 2, p(7), Backend::Auto).unwrap(), 5);
        assert_eq!(sumset_size(&iv(0, 6), 2, p(7), Backend::Auto).unwrap(), 7);
    }
}

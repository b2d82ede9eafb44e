//! Sieve of Eratosthenes, Ψ(x, y) and primes in progressions.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Odd-only bit sieve of the integers `0..=limit`.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    // bit i set <=> 2i+1 is composite (or 1)
    composite: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Self {
        let odd_count = limit / 2 + 1;
        let mut composite = vec![0u64; (odd_count as usize).div_ceil(64)];
        composite[0] |= 1; // the number 1
        let mut i = 1u64;
        while (2 * i + 1) * (2 * i + 1) <= limit {
            if composite[(i / 64) as usize] >> (i % 64) & 1 == 0 {
                let q = 2 * i + 1;
                let mut j = q * q / 2;
                while j < odd_count {
                    composite[(j / 64) as usize] |= 1 << (j % 64);
                    j += q;
                }
            }
            i += 1;
        }
        PrimeSieve { limit, composite }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "{n} beyond sieve limit {}", self.limit);
        if n < 3 {
            return n == 2;
        }
        if n.is_multiple_of(2) {
            return false;
        }
        let i = n / 2;
        self.composite[(i / 64) as usize] >> (i % 64) & 1 == 0
    }

    /// Ascending primes `<= limit`.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let two = (self.limit >= 2).then_some(2);
        let odd_count = self.limit / 2 + 1;
        let odd = (1..odd_count).filter_map(move |i| {
            let n = 2 * i + 1;
            (n <= self.limit && self.composite[(i / 64) as usize] >> (i % 64) & 1 == 0)
                .then_some(n)
        });
        two.into_iter().chain(odd)
    }
}

/// Ascending list of primes `<= n`.
pub fn primes_upto(n: u64) -> Vec<u64> {
    PrimeSieve::new(n).primes().collect()
}

/// Ψ(x, y): the number of `1 <= m <= x` with no prime factor exceeding `y`.
///
/// Exact recursive enumeration `Ψ(x, p_i) = Ψ(x, p_{i-1}) + Ψ(x / p_i, p_i)`.
pub fn smooth_count(x: u64, y: u64) -> Result<u64> {
    if x == 0 || y == 0 {
        return Err(Error::domain("smooth_count needs x >= 1 and y >= 1"));
    }
    let primes = primes_upto(y.min(x));
    Ok(psi(x, &primes))
}

fn psi(x: u64, primes: &[u64]) -> u64 {
    match primes.last() {
        None => 1,
        Some(_) if x < 2 => x,
        // every m <= x is smooth once the largest allowed prime reaches x
        Some(&q) if q >= x => x,
        Some(&q) => {
            let rest = &primes[..primes.len() - 1];
            psi(x, rest) + psi(x / q, primes)
        }
    }
}

/// π(x; q, a): primes `<= x` congruent to `a` mod `q`.
pub fn prime_count_ap(x: u64, q: u64, a: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::domain("modulus q must be positive"));
    }
    if a.gcd(&q) != 1 {
        return Err(Error::domain(format!("gcd({a}, {q}) != 1")));
    }
    let sieve = PrimeSieve::new(x);
    Ok(count_in_progression(&sieve, x, q, a % q))
}

pub(crate) fn count_in_progression(sieve: &PrimeSieve, x: u64, q: u64, a: u64) -> u64 {
    let x = x.min(sieve.limit());
    if q == 1 {
        return sieve.primes().take_while(|&n| n <= x).count() as u64;
    }
    // walk the progression itself; cheaper than filtering all primes when q is large
    let mut n = a;
    let mut count = 0;
    while n <= x {
        if sieve.is_prime(n) {
            count += 1;
        }
        n += q;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_examples() {
        assert!(primes_upto(0).is_empty());
        assert!(primes_upto(1).is_empty());
        assert_eq!(primes_upto(2), vec![2]);
        assert_eq!(primes_upto(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_upto(30).len(), 10);
        assert_eq!(primes_upto(1_000_000).len(), 78_498);
    }

    #[test]
    fn smooth_examples() {
        assert_eq!(smooth_count(10, 10).unwrap(), 10);
        assert_eq!(smooth_count(10, 2).unwrap(), 4);
        assert_eq!(smooth_count(100, 3).unwrap(), 20);
        assert_eq!(smooth_count(1, 1).unwrap(), 1);
        assert_eq!(smooth_count(1000, 1).unwrap(), 1);
        assert!(smooth_count(0, 3).is_err());
    }

    #[test]
    fn progression_examples() {
        assert_eq!(prime_count_ap(10, 1, 0).unwrap(), 4);
        assert_eq!(prime_count_ap(20, 4, 1).unwrap(), 3);
        assert_eq!(prime_count_ap(20, 4, 3).unwrap(), 4);
        assert_eq!(prime_count_ap(100, 11, 1).unwrap(), 3);
        assert!(prime_count_ap(20, 4, 2).is_err());
    }
}

//! Prime-field arithmetic and elementary number theory.
//!
//! Everything here is a pure function of its inputs. Residues are carried as
//! `u64` values in `[0, p)`; products go through `u128` so any prime below
//! 2^63 is handled exactly.

mod interval;
mod primality;
mod reconstruct;
pub(crate) mod sieve;

pub use interval::Interval;
pub use primality::{factorize, is_prime, next_prime, prev_prime};
pub use reconstruct::{rational_reconstruct, RationalPair};
pub use sieve::{prime_count_ap, primes_upto, smooth_count, PrimeSieve};

use crate::error::{Error, Result};

/// An odd prime `3 <= p < 2^63`, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub const MAX: u64 = 1 << 63;

    pub fn new(p: u64) -> Result<Self> {
        if !(3..Self::MAX).contains(&p) {
            return Err(Error::domain(format!("modulus {p} outside [3, 2^63)")));
        }
        if !is_prime(p) {
            return Err(Error::domain(format!("modulus {p} is not prime")));
        }
        Ok(PrimeModulus(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i128) -> u64 {
        x.rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        let p = self.0 as u128;
        (if s >= p { s - p } else { s }) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        let mut b = base % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, x: u64) -> Result<u64> {
        mod_inverse(x, self)
    }
}

impl std::fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `x^{-1} mod p` via the extended Euclidean algorithm.
pub fn mod_inverse(x: u64, p: PrimeModulus) -> Result<u64> {
    let m = p.get();
    let x = x % m;
    if x == 0 {
        return Err(Error::domain("zero has no inverse"));
    }
    let (mut r0, mut r1) = (m as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(p.reduce(t0))
}

/// Inverts every entry with a single modular inversion (Montgomery's trick).
pub fn batch_inverse(xs: &[u64], p: PrimeModulus) -> Result<Vec<u64>> {
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    let mut prefix = Vec::with_capacity(xs.len());
    let mut acc = 1u64;
    for (i, &x) in xs.iter().enumerate() {
        let x = x % p.get();
        if x == 0 {
            return Err(Error::domain(format!("entry {i} is zero and has no inverse")));
        }
        prefix.push(acc);
        acc = p.mul(acc, x);
    }
    let mut inv_acc = mod_inverse(acc, p)?;
    let mut out = vec![0u64; xs.len()];
    for i in (0..xs.len()).rev() {
        out[i] = p.mul(inv_acc, prefix[i]);
        inv_acc = p.mul(inv_acc, xs[i] % p.get());
    }
    Ok(out)
}

/// Number of positive divisors τ(n).
pub fn divisor_count(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("divisor count of zero is undefined"));
    }
    Ok(factorize(n).iter().map(|&(_, e)| e as u64 + 1).product())
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::domain("divisors of zero are undefined"));
    }
    let mut out = vec![1u64];
    for (q, e) in factorize(n) {
        let len = out.len();
        let mut pw = 1u64;
        for _ in 0..e {
            pw *= q;
            for i in 0..len {
                out.push(out[i] * pw);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .iter()
        .fold(n, |acc, &(q, _)| acc / q * (q - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    #[test]
    fn modulus_validation() {
        assert!(PrimeModulus::new(2).is_err());
        assert!(PrimeModulus::new(9).is_err());
        assert!(PrimeModulus::new(1 << 63).is_err());
        assert_eq!(PrimeModulus::new(7).unwrap().get(), 7);
        let big = prev_prime((1 << 63) - 1).unwrap();
        assert!(PrimeModulus::new(big).is_ok());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(1, p(7)).unwrap(), 1);
        assert_eq!(mod_inverse(3, p(7)).unwrap(), 5);
        assert_eq!(mod_inverse(4, p(13)).unwrap(), 10);
        assert_eq!(mod_inverse(0, p(7)), Err(Error::domain("zero has no inverse")));
    }

    #[test]
    fn batch_examples() {
        assert_eq!(batch_inverse(&[1, 2, 3], p(7)).unwrap(), vec![1, 4, 5]);
        assert_eq!(batch_inverse(&[1], p(7)).unwrap(), vec![1]);
        assert_eq!(batch_inverse(&[6, 6], p(7)).unwrap(), vec![6, 6]);
        match batch_inverse(&[1, 2, 7, 3], p(7)) {
            Err(Error::Domain(msg)) => assert!(msg.contains("entry 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mulmod_near_the_cap() {
        let m = p(prev_prime((1 << 63) - 1).unwrap());
        let a = m.get() - 1;
        // (-1)(-1) = 1
        assert_eq!(m.mul(a, a), 1);
        assert_eq!(m.mul(m.inv(a).unwrap(), a), 1);
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(12).unwrap(), 6);
        assert_eq!(divisor_count(36).unwrap(), 9);
        assert!(divisor_count(0).is_err());
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(12), 4);
    }
}

use std::fmt;

use num_integer::{Integer, Roots};

use super::PrimeModulus;
use crate::error::{Error, Result};

/// A reduced fraction `u / v` with `v > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalPair {
    u: i64,
    v: i64,
}

impl RationalPair {
    pub fn new(u: i64, v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::domain("denominator must be nonzero"));
        }
        let g = u.gcd(&v).max(1);
        let (mut u, mut v) = (u / g, v / g);
        if v < 0 {
            u = -u;
            v = -v;
        }
        Ok(RationalPair { u, v })
    }

    pub fn integer(u: i64) -> Self {
        RationalPair { u, v: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.u
    }

    pub fn denom(&self) -> i64 {
        self.v
    }

    /// `u * v^{-1} mod p`.
    pub fn to_residue(&self, p: PrimeModulus) -> Result<u64> {
        let v = p.reduce(self.v as i128);
        Ok(p.mul(p.reduce(self.u as i128), p.inv(v)?))
    }
}

impl fmt::Display for RationalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v == 1 {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{}/{}", self.u, self.v)
        }
    }
}

/// Writes `j ≡ u/v (mod p)` with `|u| <= ⌊√p⌋` and `1 <= v <= ⌊√p⌋`.
///
/// The returned pair has the smallest admissible `v`; for that `v` the
/// numerator is unique because `⌊√p⌋ < p/2`. Runs the Euclidean remainder
/// sequence on `(p, j)` and finishes with the intermediate fraction that
/// first brings the remainder under `⌊√p⌋`.
pub fn rational_reconstruct(j: u64, p: PrimeModulus) -> RationalPair {
    let m = p.get() as i128;
    let bound = p.get().sqrt() as i128;
    let j = (j as i128).rem_euclid(m);
    let centered = if j <= m / 2 { j } else { j - m };
    if centered.abs() <= bound {
        return RationalPair { u: centered as i64, v: 1 };
    }
    // Invariant: r_i ≡ t_i · j (mod p), remainders strictly decreasing.
    let (mut r_prev, mut t_prev) = (m, 0i128);
    let (mut r_cur, mut t_cur) = (j, 1i128);
    loop {
        let q = r_prev / r_cur;
        let (r_next, t_next) = (r_prev - q * r_cur, t_prev - q * t_cur);
        if r_next <= bound {
            let c = (r_prev - bound + r_cur - 1) / r_cur;
            let (u, v) = (r_prev - c * r_cur, t_prev - c * t_cur);
            let (u, v) = if v < 0 { (-u, -v) } else { (u, v) };
            return RationalPair { u: u as i64, v: v as i64 };
        }
        (r_prev, t_prev, r_cur, t_cur) = (r_cur, t_cur, r_next, t_next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = PrimeModulus::new(7).unwrap();
        assert_eq!(rational_reconstruct(0, p), RationalPair::new(0, 1).unwrap());
        assert_eq!(rational_reconstruct(1, p), RationalPair::new(1, 1).unwrap());
        let r = rational_reconstruct(3, p);
        assert_eq!((r.numer(), r.denom()), (-1, 2));
    }

    #[test]
    fn pair_is_normalized() {
        let r = RationalPair::new(4, -6).unwrap();
        assert_eq!((r.numer(), r.denom()), (-2, 3));
        assert!(RationalPair::new(1, 0).is_err());
        assert_eq!(r.to_string(), "-2/3");
    }
}

//! Exact solution counts over ℚ and ℤ for equations in reciprocals.

use std::collections::HashMap;
use std::hash::Hash;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modmath::RationalPair;
use crate::polyalg::hyperbola_divisor_solutions;

/// Upper limit on the number of tuples enumerated by the ℚ-side counters.
pub const RATIONAL_MAX_TUPLES: u64 = 1 << 30;

fn tuple_budget(base: u64, r: u32) -> Result<()> {
    match base.checked_pow(r) {
        Some(m) if m <= RATIONAL_MAX_TUPLES => Ok(()),
        _ => Err(Error::resource(format!(
            "{base}^{r} tuples exceed the enumeration budget 2^30"
        ))),
    }
}

/// Σ_v T(v)² where T(v) counts r-tuples of `terms` summing to v.
fn energy_of_sums<K>(terms: &[K], r: u32, zero: K) -> BigUint
where
    K: Hash + Eq + Clone + Add<Output = K>,
{
    let mut cur: HashMap<K, u64> = HashMap::from([(zero, 1)]);
    for _ in 0..r {
        let mut next: HashMap<K, u64> = HashMap::with_capacity(cur.len() * terms.len());
        for (v, &c) in &cur {
            for t in terms {
                *next.entry(v.clone() + t.clone()).or_insert(0) += c;
            }
        }
        cur = next;
    }
    cur.values().map(|&c| BigUint::from(c as u128 * c as u128)).sum()
}

/// Energy of r-fold sums of the unit fractions `1/d`, `d` nonzero.
///
/// All fractions are scaled to the common denominator `lcm(|d|)`, so equal
/// sums are exactly equal integer numerators.
fn unit_fraction_energy(denoms: &[i64], r: u32) -> BigUint {
    let lcm = denoms
        .iter()
        .fold(BigInt::one(), |acc, &d| acc.lcm(&BigInt::from(d)));
    let numerators: Vec<BigInt> = denoms.iter().map(|&d| &lcm / BigInt::from(d)).collect();
    let limit = BigInt::from(i128::MAX / (r.max(1) as i128 + 1));
    if numerators.iter().all(|n| n.abs() < limit) {
        let small: Vec<i128> = numerators.iter().map(|n| n.to_i128().unwrap()).collect();
        energy_of_sums(&small, r, 0i128)
    } else {
        energy_of_sums(&numerators, r, BigInt::zero())
    }
}

/// #{x ∈ [1,N]^{2k} : 1/x₁ + … + 1/x_k = 1/x_{k+1} + … + 1/x_{2k}} over ℚ.
pub fn rational_j2k(n: u64, k: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    tuple_budget(n, k)?;
    let denoms: Vec<i64> = (1..=n as i64).collect();
    Ok(unit_fraction_energy(&denoms, k))
}

/// Symmetric count for `1/(σ+x₁) + … + 1/(σ+x_r) = 1/(σ+x_{r+1}) + … + 1/(σ+x_{2r})`
/// with `1 <= xᵢ <= N` and rational shift σ.
pub fn rational_shifted_count(sigma: RationalPair, n: u64, r: u32) -> Result<BigUint> {
    if n == 0 || r == 0 {
        return Err(Error::domain("need N >= 1 and r >= 1"));
    }
    tuple_budget(n, r)?;
    let (u, v) = (sigma.numer() as i128, sigma.denom() as i128);
    // 1/(σ + x) = v/(u + vx); the common factor v does not affect equality
    let mut denoms = Vec::with_capacity(n as usize);
    for x in 1..=n as i128 {
        let d = u + v * x;
        if d == 0 {
            return Err(Error::domain(format!("σ = {sigma} equals -{x}")));
        }
        let d = i64::try_from(d).map_err(|_| Error::resource("shifted denominator overflows i64"))?;
        denoms.push(d);
    }
    Ok(unit_fraction_energy(&denoms, r))
}

/// #{(x₁,…,x_r) ∈ S^r : c₁x₁ + … + c_r x_r = c} over ℚ, by meeting in the middle.
pub fn weighted_solution_count(
    coeffs: &[BigRational],
    rhs: &BigRational,
    set: &[BigRational],
) -> Result<BigUint> {
    if coeffs.is_empty() {
        return Err(Error::domain("coefficient list is empty"));
    }
    if let Some(i) = coeffs.iter().position(Zero::is_zero) {
        return Err(Error::domain(format!("coefficient {i} is zero")));
    }
    tuple_budget(set.len() as u64, coeffs.len().div_ceil(2) as u32)?;
    let (left, right) = coeffs.split_at(coeffs.len() / 2);
    let table = |cs: &[BigRational]| {
        let mut cur: HashMap<BigRational, u64> = HashMap::from([(BigRational::zero(), 1)]);
        for c in cs {
            let mut next = HashMap::with_capacity(cur.len() * set.len());
            for (v, &m) in &cur {
                for s in set {
                    *next.entry(v + c * s).or_insert(0u64) += m;
                }
            }
            cur = next;
        }
        cur
    };
    let lt = table(left);
    let rt = table(right);
    let mut total = BigUint::zero();
    for (v, &m) in &lt {
        if let Some(&mr) = rt.get(&(rhs - v)) {
            total += BigUint::from(m as u128 * mr as u128);
        }
    }
    Ok(total)
}

/// Ordered solutions of
/// `u₀X₁X₂X₃ = v₀b₀(X₁X₂ + X₂X₃ + X₃X₁)`, `Xᵢ = a₀ + b₀xᵢ ≠ 0`, `1 <= xᵢ <= N`.
///
/// For fixed `x₁` the equation becomes `A X₂X₃ + B(X₂ + X₃) = 0` with
/// `A = u₀X₁ − v₀b₀`, `B = −v₀b₀X₁`, whose solutions are read off the divisors
/// of `B²`. The hypothesis `u₀/v₀ ∉ {b₀/(a₀+b₀x)}` is exactly `A ≠ 0`.
pub fn dioph_3i_count(a0: i64, b0: i64, u0: i64, v0: i64, n: u64) -> Result<BigUint> {
    if b0 == 0 || u0 == 0 || v0 == 0 {
        return Err(Error::domain("need b0·u0·v0 != 0"));
    }
    let (a0, b0, u0, v0) = (a0 as i128, b0 as i128, u0 as i128, v0 as i128);
    let big_x = |x: i128| a0 + b0 * x;
    for x in 1..=n as i128 {
        let bx = big_x(x);
        if bx != 0 && u0 * bx == v0 * b0 {
            return Err(Error::hypothesis(format!(
                "u0/v0 = b0/(a0 + b0·x) at x = {x}"
            )));
        }
    }
    let bound = a0.abs() + b0.abs() * n as i128;
    let to_i64 = |v: i128| {
        i64::try_from(v).map_err(|_| Error::resource("coefficient exceeds i64 range"))
    };
    let bound64 = to_i64(bound)?;
    let in_range = |big: i128| -> bool {
        big != 0 && (big - a0) % b0 == 0 && (1..=n as i128).contains(&((big - a0) / b0))
    };
    let mut total = 0u64;
    for x1 in 1..=n as i128 {
        let x1_big = big_x(x1);
        if x1_big == 0 {
            continue;
        }
        let a = to_i64(u0 * x1_big - v0 * b0)?;
        let b = to_i64(-v0 * b0 * x1_big)?;
        for (x2_big, x3_big) in hyperbola_divisor_solutions(a, b, bound64)? {
            if in_range(x2_big as i128) && in_range(x3_big as i128) {
                total += 1;
            }
        }
    }
    Ok(BigUint::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_j2k_examples() {
        assert_eq!(rational_j2k(1, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(rational_j2k(2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(rational_j2k(3, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(rational_j2k(5, 0).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn large_lcm_uses_big_path() {
        // lcm(1..120) overflows i128
        let j = rational_j2k(120, 1).unwrap();
        assert_eq!(j, BigUint::from(120u32));
    }

    #[test]
    fn shifted_examples() {
        let zero = RationalPair::integer(0);
        assert_eq!(rational_shifted_count(zero, 3, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(rational_shifted_count(zero, 2, 2).unwrap(), rational_j2k(2, 2).unwrap());
        let half = RationalPair::new(1, 2).unwrap();
        assert_eq!(rational_shifted_count(half, 2, 1).unwrap(), BigUint::from(2u32));
        let minus_two = RationalPair::integer(-2);
        assert!(matches!(rational_shifted_count(minus_two, 3, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn weighted_examples() {
        let s: Vec<BigRational> = [1, 2, 3].iter().map(|&x| q(x, 1)).collect();
        assert_eq!(weighted_solution_count(&[q(1, 1), q(-1, 1)], &q(0, 1), &s).unwrap(), BigUint::from(3u32));
        let s: Vec<BigRational> = [1, 2].iter().map(|&x| q(x, 1)).collect();
        assert_eq!(weighted_solution_count(&[q(1, 1), q(1, 1)], &q(2, 1), &s).unwrap(), BigUint::from(1u32));
        let s: Vec<BigRational> = [1, 2, 4].iter().map(|&x| q(x, 1)).collect();
        assert_eq!(weighted_solution_count(&[q(2, 1), q(-1, 1)], &q(0, 1), &s).unwrap(), BigUint::from(2u32));
        assert!(weighted_solution_count(&[], &q(0, 1), &s).is_err());
        assert!(weighted_solution_count(&[q(0, 1)], &q(0, 1), &s).is_err());
    }

    #[test]
    fn dioph_examples() {
        assert_eq!(dioph_3i_count(0, 1, 3, 1, 3).unwrap(), BigUint::from(1u32));
        assert_eq!(dioph_3i_count(0, 1, 5, 1, 10).unwrap(), BigUint::zero());
        match dioph_3i_count(0, 1, 1, 1, 6) {
            Err(Error::Hypothesis(msg)) => assert!(msg.contains("x = 1")),
            other => panic!("{other:?}"),
        }
    }

    fn dioph_naive(a0: i64, b0: i64, u0: i64, v0: i64, n: i64) -> u64 {
        let xs: Vec<i128> = (1..=n).map(|x| (a0 + b0 * x) as i128).filter(|&v| v != 0).collect();
        let mut c = 0;
        for &x1 in &xs {
            for &x2 in &xs {
                for &x3 in &xs {
                    if u0 as i128 * x1 * x2 * x3 == (v0 * b0) as i128 * (x1 * x2 + x2 * x3 + x3 * x1) {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn dioph_matches_cubic_loop() {
        let cases = [(0, 1, 3, 2, 12), (1, 2, 7, 3, 10), (-3, 1, 1, 2, 12), (2, 3, 5, 1, 9), (0, 1, 11, 6, 12)];
        for (a0, b0, u0, v0, n) in cases {
            match dioph_3i_count(a0, b0, u0, v0, n as u64) {
                Ok(j) => assert_eq!(j, BigUint::from(dioph_naive(a0, b0, u0, v0, n)), "{:?}", (a0, b0, u0, v0, n)),
                Err(Error::Hypothesis(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

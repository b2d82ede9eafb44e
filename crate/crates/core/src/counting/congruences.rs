//! Multiplicative congruences on intervals: hyperbolas, reciprocal pairs,
//! triple products and the two-interval multiplicative energy.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::modmath::{batch_inverse, Interval, PrimeModulus};

fn nonzero_lambda(lambda: u64, p: PrimeModulus) -> Result<u64> {
    let l = lambda % p.get();
    if l == 0 {
        Err(Error::domain("λ must be nonzero mod p"))
    } else {
        Ok(l)
    }
}

/// Nonzero residues of the interval paired with their inverses.
fn units_with_inverses(interval: &Interval, p: PrimeModulus) -> Result<(Vec<u64>, Vec<u64>)> {
    let xs: Vec<u64> = interval.residues(p).filter(|&x| x != 0).collect();
    let inv = batch_inverse(&xs, p)?;
    Ok((xs, inv))
}

/// #{(x, y) ∈ I² : xy ≡ λ}.
pub fn hyperbola_count(interval: &Interval, lambda: u64, p: PrimeModulus) -> Result<u64> {
    let lambda = nonzero_lambda(lambda, p)?;
    let (_, inv) = units_with_inverses(interval, p)?;
    Ok(inv
        .iter()
        .filter(|&&xi| interval.contains(p.mul(lambda, xi), p))
        .count() as u64)
}

/// #{(x, y) ∈ I² : x⁻¹ + y⁻¹ ≡ λ}, counted through the completed hyperbola
/// `(x − λ⁻¹)(y − λ⁻¹) ≡ λ⁻²`.
pub fn inverse_pair_count(interval: &Interval, lambda: u64, p: PrimeModulus) -> Result<u64> {
    let lambda = nonzero_lambda(lambda, p)?;
    interval.ensure_invertible(p)?;
    let mu = p.inv(lambda)?;
    let target = p.mul(mu, mu);
    // shifted x − λ⁻¹; the point x = λ⁻¹ has no partner
    let shifted: Vec<u64> = interval
        .residues(p)
        .map(|x| p.sub(x, mu))
        .filter(|&s| s != 0)
        .collect();
    let inv = batch_inverse(&shifted, p)?;
    Ok(inv
        .iter()
        .filter(|&&si| {
            let y = p.add(p.mul(target, si), mu);
            interval.contains(y, p)
        })
        .count() as u64)
}

/// Direct double loop over inverse pairs; the reference for [`inverse_pair_count`].
pub fn inverse_pair_count_direct(interval: &Interval, lambda: u64, p: PrimeModulus) -> Result<u64> {
    let lambda = nonzero_lambda(lambda, p)?;
    let inv = interval.inverses(p)?;
    let mut count = 0;
    for &a in &inv {
        for &b in &inv {
            if p.add(a, b) == lambda {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// #{(x, y, z) ∈ I³ : xyz ≡ λ}.
pub fn triple_product_count(interval: &Interval, lambda: u64, p: PrimeModulus) -> Result<u64> {
    let lambda = nonzero_lambda(lambda, p)?;
    let (_, inv) = units_with_inverses(interval, p)?;
    let mut count = 0;
    for &xi in &inv {
        let partial = p.mul(lambda, xi);
        for &yi in &inv {
            if interval.contains(p.mul(partial, yi), p) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// #{xy ≡ zt : x, z ∈ I₁; y, t ∈ I₂}.
pub fn mult_energy(i1: &Interval, i2: &Interval, p: PrimeModulus) -> Result<BigUint> {
    i1.ensure_invertible(p)?;
    i2.ensure_invertible(p)?;
    let ys: Vec<u64> = i2.residues(p).collect();
    let mut products: HashMap<u64, u64> = HashMap::new();
    for x in i1.residues(p) {
        for &y in &ys {
            *products.entry(p.mul(x, y)).or_insert(0) += 1;
        }
    }
    Ok(products
        .values()
        .map(|&c| BigUint::from(c as u128 * c as u128))
        .sum())
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::sieve::count_in_progression;
use crate::modmath::{euler_phi, is_prime, PrimeSieve};

/// Largest `x` the report sieves up to.
pub const BT_MAX_X: u64 = 100_000_000;

/// One row of the Brun–Titchmarsh table for `q` near `x^θ` and `a = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BtRow {
    pub theta: f64,
    pub q: u64,
    pub count: u64,
    /// `π(x; q, 1) φ(q) ln(x/q) / x`.
    pub c_measured: f64,
}

/// The prime nearest to `t`, the smaller one on a tie.
fn nearest_prime(t: f64) -> u64 {
    let below = t.floor().max(2.0) as u64;
    let lo = (2..=below).rev().find(|&n| is_prime(n));
    let mut hi = below + 1;
    while !is_prime(hi) {
        hi += 1;
    }
    match lo {
        Some(lo) if t - lo as f64 <= hi as f64 - t => lo,
        _ => hi,
    }
}

pub fn brun_titchmarsh_report(x: u64, thetas: &[f64]) -> Result<Vec<BtRow>> {
    if thetas.is_empty() {
        return Err(Error::config("θ grid is empty"));
    }
    if let Some(th) = thetas.iter().find(|th| !(**th > 0.0 && **th < 1.0)) {
        return Err(Error::config(format!("θ = {th} is outside (0, 1)")));
    }
    if x > BT_MAX_X {
        return Err(Error::resource(format!("x = {x} exceeds the sieve budget {BT_MAX_X}")));
    }
    if x < 2 {
        return Err(Error::config("x must be at least 2"));
    }
    let sieve = PrimeSieve::new(x);
    thetas
        .iter()
        .map(|&theta| {
            let q = nearest_prime((x as f64).powf(theta));
            let count = count_in_progression(&sieve, x, q, 1);
            let c_measured = if q < x {
                count as f64 * euler_phi(q) as f64 * (x as f64 / q as f64).ln() / x as f64
            } else {
                0.0
            };
            Ok(BtRow { theta, q, count, c_measured })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let rows = brun_titchmarsh_report(100, &[0.5]).unwrap();
        assert_eq!((rows[0].q, rows[0].count), (11, 3));
        let rows = brun_titchmarsh_report(1_000_000, &[0.5]).unwrap();
        assert_eq!(rows[0].q, 997);
        assert!(rows[0].c_measured > 0.0);
        assert!(matches!(brun_titchmarsh_report(100, &[]), Err(Error::Config(_))));
        assert!(matches!(brun_titchmarsh_report(BT_MAX_X + 1, &[0.5]), Err(Error::Resource(_))));
    }

    #[test]
    fn nearest_prime_ties() {
        assert_eq!(nearest_prime(10.0), 11);
        assert_eq!(nearest_prime(9.0), 7);
        assert_eq!(nearest_prime(1000.0), 997);
        assert_eq!(nearest_prime(1.2), 2);
    }
}

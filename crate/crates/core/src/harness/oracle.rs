//! Slow reference computations used by the `verify` suites.

use num_bigint::BigUint;

use crate::error::Result;
use crate::modmath::{mod_inverse, Interval, PrimeModulus};

/// J₂ₖ by running over all `2k`-tuples, `O(N^{2k})`.
pub fn naive_j2k(interval: &Interval, k: u32, p: PrimeModulus) -> Result<BigUint> {
    let inv: Vec<u64> = interval
        .residues(p)
        .map(|x| mod_inverse(x, p))
        .collect::<Result<_>>()?;
    fn rec(level: u32, k: u32, acc: u64, inv: &[u64], p: PrimeModulus) -> u64 {
        // the first k inverses are added, the last k subtracted
        if level == 2 * k {
            return (acc == 0) as u64;
        }
        if level == 2 * k - 1 {
            // the last variable is forced: count y in I* with y ≡ acc
            return inv.iter().filter(|&&y| y == acc).count() as u64;
        }
        inv.iter()
            .map(|&y| {
                let next = if level < k { p.add(acc, y) } else { p.sub(acc, y) };
                rec(level + 1, k, next, inv, p)
            })
            .sum()
    }
    Ok(BigUint::from(rec(0, k, 0, &inv, p)))
}

/// `max_a |Σ e_p(a x*)|` by evaluating every `a` directly.
pub fn naive_max_linear(interval: &Interval, p: PrimeModulus) -> Result<(u64, f64)> {
    let mut best = (0, f64::NEG_INFINITY);
    for a in 1..p.get() {
        let m = crate::expsums::linear_incomplete(a, interval, p)?.modulus();
        if m > best.1 + 1e-9 {
            best = (a, m);
        }
    }
    Ok(best)
}

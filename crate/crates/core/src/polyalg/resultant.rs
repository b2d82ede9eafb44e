//! Sylvester resultants and the solution polynomials attached to symmetric
//! reciprocal equations.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntPoly;
use crate::counting::ln_big;
use crate::error::{Error, Result};

/// The `(m+n) × (m+n)` Sylvester matrix of `P` (degree m) and `Q` (degree n).
pub fn sylvester_matrix(p: &IntPoly, q: &IntPoly) -> Result<Vec<Vec<BigInt>>> {
    let (m, n) = match (p.degree(), q.degree()) {
        (Some(m), Some(n)) if m >= 1 && n >= 1 => (m, n),
        _ => return Err(Error::domain("resultant needs two non-constant polynomials")),
    };
    let size = m + n;
    let pd = p.descending();
    let qd = q.descending();
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for (shift, row) in rows.iter_mut().take(n).enumerate() {
        for (j, c) in pd.iter().enumerate() {
            row[shift + j] = c.clone();
        }
    }
    for (shift, row) in rows.iter_mut().skip(n).enumerate() {
        for (j, c) in qd.iter().enumerate() {
            row[shift + j] = c.clone();
        }
    }
    Ok(rows)
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(pivot_row) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot_row != k {
            m.swap(k, pivot_row);
            negate = !negate;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &pivot - &m[i][k] * &m[k][j];
                // exact by Sylvester's identity
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Res(P, Q) as the Sylvester determinant.
pub fn sylvester_resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    Ok(bareiss_determinant(&sylvester_matrix(p, q)?))
}

/// The polynomial
/// `Σ_{i<=k} Π_{j≠i}(Z + x_j) − Σ_{i>k} Π_{j≠i}(Z + x_j)` for a 2k-tuple.
///
/// It vanishes at `Z = a` (mod p) whenever `(x + a)` solves the symmetric
/// reciprocal congruence, and its degree is at most `2k − 2`.
pub fn build_solution_poly(xs: &[i64]) -> Result<IntPoly> {
    if xs.is_empty() || !xs.len().is_multiple_of(2) {
        return Err(Error::domain("need a tuple of even length 2k >= 2"));
    }
    let k = xs.len() / 2;
    let factors: Vec<IntPoly> = xs.iter().map(|&x| IntPoly::shifted_monic(x)).collect();
    let mut prefix = vec![IntPoly::constant(1)];
    for f in &factors {
        let next = prefix.last().unwrap() * f;
        prefix.push(next);
    }
    let mut suffix = vec![IntPoly::constant(1); factors.len() + 1];
    for i in (0..factors.len()).rev() {
        suffix[i] = &suffix[i + 1] * &factors[i];
    }
    let mut acc = IntPoly::zero();
    for i in 0..factors.len() {
        let omit = &prefix[i] * &suffix[i + 1];
        acc = if i < k { &acc + &omit } else { &acc - &omit };
    }
    Ok(acc)
}

/// Outcome of comparing |Res(P, Q)| with `N^{(m−1+σ)(n−1+θ) − σθ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultantBoundReport {
    pub resultant: BigInt,
    /// Number of coefficients of P and Q (degree + 1).
    pub m: usize,
    pub n: usize,
    pub exponent: Ratio<i64>,
    /// `N^exponent` as a float.
    pub bound: f64,
    /// `|Res| / N^exponent`; the implicit constant is not asserted.
    pub ratio: f64,
}

fn coefficient_within(a: &BigInt, i: usize, shift: Ratio<i64>, n: u64, cap: &BigUint) -> bool {
    // |a| < A·N^{i+shift}  <=>  |a|^q · N^{max(0, -e)} < A^q · N^{max(0, e)}, e = iq + s
    let q = *shift.denom() as u32;
    let e = i as i64 * *shift.denom() + *shift.numer();
    let lhs = a.magnitude().pow(q) * BigUint::from(n).pow((-e).max(0) as u32);
    let rhs = cap.pow(q) * BigUint::from(n).pow(e.max(0) as u32);
    lhs < rhs
}

/// Checks the coefficient-size hypotheses of the resultant bound and reports
/// how |Res(P, Q)| compares with the predicted power of N.
pub fn resultant_bound_check(
    p: &IntPoly,
    q: &IntPoly,
    n: u64,
    sigma: Ratio<i64>,
    theta: Ratio<i64>,
    cap: u64,
) -> Result<ResultantBoundReport> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    let zero = Ratio::zero();
    if !(sigma >= zero || theta >= zero || sigma + theta >= Ratio::from_integer(-1)) {
        return Err(Error::hypothesis(format!(
            "none of σ >= 0, θ >= 0, σ + θ >= -1 holds for σ = {sigma}, θ = {theta}"
        )));
    }
    let resultant = sylvester_resultant(p, q)?;
    let cap_big = BigUint::from(cap);
    for (name, poly, shift) in [("a", p, sigma), ("b", q, theta)] {
        for (i, c) in poly.descending().iter().enumerate() {
            if !coefficient_within(c, i, shift, n, &cap_big) {
                return Err(Error::hypothesis(format!(
                    "coefficient {name}_{i} = {c} violates |{name}_{i}| < A·N^({i} + {shift})"
                )));
            }
        }
    }
    let m = p.degree().unwrap() + 1;
    let nq = q.degree().unwrap() + 1;
    let exponent = (Ratio::from_integer(m as i64 - 1) + sigma)
        * (Ratio::from_integer(nq as i64 - 1) + theta)
        - sigma * theta;
    let exp_f = exponent.numer().to_f64().unwrap() / exponent.denom().to_f64().unwrap();
    let ln_n = (n as f64).ln();
    let ratio = if resultant.is_zero() {
        0.0
    } else {
        (ln_big(resultant.magnitude()) - exp_f * ln_n).exp()
    };
    Ok(ResultantBoundReport {
        bound: (exp_f * ln_n).exp(),
        ratio,
        m,
        n: nq,
        exponent,
        resultant: resultant.abs(),
    })
}

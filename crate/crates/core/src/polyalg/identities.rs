//! The cubic symmetric-function identity and the divisor parametrisation of
//! `Axy + Bx + By = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::modmath::divisors;

/// Both sides of
/// `(x²−a₂x+a₁)(y²−a₂y+a₁)(z²−a₂z+a₁) = (b₁−α₁b₂−α₁³)(b₁−α₂b₂−α₂³)`
/// where α₁, α₂ are the roots of `t² − a₂t + a₁`.
///
/// The right side is expanded through `α₁+α₂ = a₂`, `α₁α₂ = a₁`, so no square
/// root is ever taken. Fails unless `xyz = a₁(x+y+z) + b₁` and
/// `xy+yz+zx = a₂(x+y+z) + b₂`.
pub fn identity_sides(
    x: &BigRational,
    y: &BigRational,
    z: &BigRational,
    a1: &BigRational,
    a2: &BigRational,
    b1: &BigRational,
    b2: &BigRational,
) -> Result<(BigRational, BigRational)> {
    let e1 = x + y + z;
    if x * y * z != a1 * &e1 + b1 {
        return Err(Error::hypothesis("xyz != a1(x+y+z) + b1"));
    }
    if x * y + y * z + z * x != a2 * &e1 + b2 {
        return Err(Error::hypothesis("xy+yz+zx != a2(x+y+z) + b2"));
    }
    let quad = |t: &BigRational| t * t - a2 * t + a1;
    let lhs = quad(x) * quad(y) * quad(z);
    let (s, q) = (a2, a1);
    // α₁³+α₂³ = s³ − 3qs,  α₁α₂(α₁²+α₂²) = q(s² − 2q),  (α₁α₂)³ = q³
    let cube_sum = s * s * s - BigRational::from_integer(3.into()) * q * s;
    let mixed = q * (s * s - BigRational::from_integer(2.into()) * q);
    let rhs = b1 * b1 - b1 * b2 * s - b1 * cube_sum + b2 * b2 * q + b2 * mixed + q * q * q;
    Ok((lhs, rhs))
}

/// `true` iff the cubic identity holds on a hypothesis-satisfying input.
pub fn identity_check(
    x: &BigRational,
    y: &BigRational,
    z: &BigRational,
    a1: &BigRational,
    a2: &BigRational,
    b1: &BigRational,
    b2: &BigRational,
) -> Result<bool> {
    let (lhs, rhs) = identity_sides(x, y, z, a1, a2, b1, b2)?;
    Ok(lhs == rhs)
}

/// All integer solutions of `Axy + Bx + By = 0` with `|x|, |y| <= bound`,
/// sorted, found from `(Ax + B)(Ay + B) = B²` by running over the signed
/// divisors `d` of `B²`.
pub fn hyperbola_divisor_solutions(a: i64, b: i64, bound: i64) -> Result<Vec<(i64, i64)>> {
    if a == 0 || b == 0 {
        return Err(Error::domain("need A·B != 0"));
    }
    let (a, b) = (a as i128, b as i128);
    let b_sq = b * b;
    let base = divisors(b.unsigned_abs() as u64)?;
    // divisors of B² are products of two divisors of |B|
    let mut divs: Vec<i128> = Vec::new();
    for &d1 in &base {
        for &d2 in &base {
            let d = d1 as i128 * d2 as i128;
            if b_sq % d == 0 {
                divs.push(d);
            }
        }
    }
    divs.sort_unstable();
    divs.dedup();
    let bound = bound as i128;
    let mut out = Vec::new();
    for d in divs.iter().flat_map(|&d| [d, -d]) {
        let (nx, ny) = (d - b, b_sq / d - b);
        if nx % a != 0 || ny % a != 0 {
            continue;
        }
        let (x, y) = (nx / a, ny / a);
        if x.abs() <= bound && y.abs() <= bound {
            out.push((x as i64, y as i64));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Convenience constructor for small rationals.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        ratio(n, 1)
    }

    #[test]
    fn identity_example() {
        let (l, r) = identity_sides(&int(1), &int(2), &int(3), &int(1), &int(1), &int(0), &int(5)).unwrap();
        assert_eq!(l, int(21));
        assert_eq!(r, int(21));
        let z = int(0);
        assert!(identity_check(&z, &z, &z, &z, &z, &z, &z).unwrap());
        assert!(matches!(
            identity_check(&int(1), &int(2), &int(3), &int(1), &int(1), &int(1), &int(5)),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn hyperbola_examples() {
        let s = hyperbola_divisor_solutions(1, 2, 10).unwrap();
        assert_eq!(s.len(), 6);
        for want in [(0, 0), (2, -1), (-6, -3)] {
            assert!(s.contains(&want));
        }
        assert_eq!(hyperbola_divisor_solutions(1, 1, 10).unwrap(), vec![(-2, -2), (0, 0)]);
        assert!(hyperbola_divisor_solutions(0, 1, 10).is_err());
    }

    #[test]
    fn hyperbola_matches_box_scan() {
        for (a, b) in [(3, 5), (-2, 7), (6, -4), (1, 12), (5, 5)] {
            let bound = 40;
            let mut scan = Vec::new();
            for x in -bound..=bound {
                for y in -bound..=bound {
                    if a * x * y + b * x + b * y == 0 {
                        scan.push((x, y));
                    }
                }
            }
            assert_eq!(hyperbola_divisor_solutions(a, b, bound).unwrap(), scan, "A={a} B={b}");
        }
    }
}

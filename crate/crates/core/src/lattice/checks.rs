use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::minima::point_count_bound;
use super::{box_points, successive_minima, LatticeBox, LatticeSpec, Minimum};
use crate::error::{Error, Result};
use crate::modmath::{mod_inverse, PrimeModulus};

/// Both sides of the point-count bound `|D∩Γ| <= Π(2i/λᵢ + 1)` and of its
/// corollary `Π min(λᵢ, 1) <= (2n+1)!! / |D∩Γ|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkowskiReport {
    pub count: u64,
    pub minima: Vec<Minimum>,
    pub lemma_rhs: BigRational,
    pub corollary_lhs: BigRational,
    pub corollary_rhs: BigRational,
    pub lemma_holds: bool,
    pub corollary_holds: bool,
}

impl MinkowskiReport {
    pub fn pass(&self) -> bool {
        self.lemma_holds && self.corollary_holds
    }
}

fn double_factorial_odd(n: usize) -> BigInt {
    (1..=2 * n + 1).step_by(2).map(BigInt::from).product()
}

pub fn minkowski_check(lattice: &LatticeSpec, body: &LatticeBox) -> Result<MinkowskiReport> {
    let (count, _) = box_points(lattice, body)?;
    let minima = successive_minima(lattice, body)?;
    let lemma_rhs = point_count_bound(&minima);
    let corollary_lhs = minima
        .iter()
        .map(|m| match m {
            Minimum::Finite(l) if *l < BigRational::one() => l.clone(),
            _ => BigRational::one(),
        })
        .fold(BigRational::one(), |acc, t| acc * t);
    let corollary_rhs = BigRational::new(double_factorial_odd(lattice.dim()), BigInt::from(count));
    let c = BigRational::from_integer(BigInt::from(count));
    Ok(MinkowskiReport {
        count,
        lemma_holds: c <= lemma_rhs,
        corollary_holds: corollary_lhs <= corollary_rhs,
        minima,
        lemma_rhs,
        corollary_lhs,
        corollary_rhs,
    })
}

/// `Γ_λ` with the body `|u| <= N^k, |v| <= kN^{k−1}` and the split of `λ`
/// by whether the second minimum is at most 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem5Lattice {
    pub lattice: LatticeSpec,
    pub body: LatticeBox,
    pub minima: Vec<Minimum>,
    /// `μ₂ <= 1`.
    pub in_omega_prime: bool,
}

pub fn theorem5_lattice(lambda: u64, n: u64, k: u32, p: PrimeModulus) -> Result<Theorem5Lattice> {
    if lambda.is_multiple_of(p.get()) {
        return Err(Error::domain("λ must be nonzero mod p"));
    }
    if n == 0 || k == 0 {
        return Err(Error::domain("N and k must be positive"));
    }
    let overflow = || Error::resource("box bounds exceed 64 bits");
    let bu = n.checked_pow(k).ok_or_else(overflow)?;
    let bv = n
        .checked_pow(k - 1)
        .and_then(|t| t.checked_mul(k as u64))
        .ok_or_else(overflow)?;
    let bu = i64::try_from(bu).map_err(|_| overflow())?;
    let bv = i64::try_from(bv).map_err(|_| overflow())?;
    let lattice = LatticeSpec::gamma(lambda, p);
    let body = LatticeBox::from_ints(&[bu, bv])?;
    let minima = successive_minima(&lattice, &body)?;
    let in_omega_prime = minima[1] <= Minimum::Finite(BigRational::one());
    Ok(Theorem5Lattice { lattice, body, minima, in_omega_prime })
}

/// `(x₁⋯x_k, Σᵢ Π_{j≠i} xⱼ)`, the point of `Γ_λ ∩ D` attached to a solution
/// of `x₁* + … + x_k* ≡ λ`.
pub fn theorem5_witness(xs: &[u64]) -> Result<[i64; 2]> {
    let overflow = || Error::resource("witness exceeds 64 bits");
    let prod: BigInt = xs.iter().map(|&x| BigInt::from(x)).product();
    let elem: BigInt = (0..xs.len())
        .map(|i| {
            xs.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| BigInt::from(x))
                .product::<BigInt>()
        })
        .sum();
    Ok([
        i64::try_from(prod).map_err(|_| overflow())?,
        i64::try_from(elem).map_err(|_| overflow())?,
    ])
}

/// The 3D lattice with `(c₁, c₂) = (a² − 2aλ*, a − λ*)` and the body
/// `|u| <= 3N, |v| <= 3N², |w| <= N³`.
pub fn planar3_lattice(a: u64, lambda: u64, n: u64, p: PrimeModulus) -> Result<(LatticeSpec, LatticeBox)> {
    let li = mod_inverse(lambda % p.get(), p)?;
    let a = a % p.get();
    let c1 = p.sub(p.mul(a, a), p.mul(2, p.mul(a, li)));
    let c2 = p.sub(a, li);
    let n3 = n
        .checked_pow(3)
        .and_then(|t| i64::try_from(t).ok())
        .ok_or_else(|| Error::resource("box bounds exceed 64 bits"))?;
    let n = n as i64;
    Ok((LatticeSpec::planar3(c1, c2, p), LatticeBox::from_ints(&[3 * n, 3 * n * n, n3])?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn spec_example() {
        let r = minkowski_check(&LatticeSpec::gamma(1, p(5)), &LatticeBox::from_ints(&[1, 1]).unwrap()).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.lemma_rhs, rat(7, 1));
        assert_eq!(r.corollary_lhs, rat(1, 1));
        assert_eq!(r.corollary_rhs, rat(5, 1));
        assert!(r.pass());
        let r = minkowski_check(&LatticeSpec::gamma(1, p(5)), &LatticeBox::from_ints(&[0, 0]).unwrap()).unwrap();
        assert_eq!(r.count, 1);
        assert!(r.pass());
    }

    #[test]
    fn theorem5_examples() {
        let t = theorem5_lattice(1, 2, 2, p(101)).unwrap();
        assert_eq!(t.body, LatticeBox::from_ints(&[4, 4]).unwrap());
        // (1, 2) has 1* + 1* = 2 and (2, 2) has 2* + 2* = 1
        let w = theorem5_witness(&[2, 2]).unwrap();
        assert_eq!(w, [4, 4]);
        assert!(t.lattice.contains(&w));
        assert_eq!(t.minima[0], Minimum::Finite(rat(1, 4)));
        assert!(theorem5_lattice(0, 2, 2, p(101)).is_err());
    }

    #[test]
    fn theorem5_first_minimum_witness() {
        let pm = p(11);
        let t = theorem5_lattice(3, 2, 2, pm).unwrap();
        let hit = (1..=2u64).any(|x| (1..=2u64).any(|y| pm.add(mod_inverse(x, pm).unwrap(), mod_inverse(y, pm).unwrap()) == 3));
        let (count, _) = box_points(&t.lattice, &t.body).unwrap();
        let small = t.minima[0] <= Minimum::Finite(BigRational::one());
        assert_eq!(small, count > 1);
        if hit {
            assert!(small);
        }
    }

    #[test]
    fn planar3_contains_solution_vectors() {
        let pm = p(101);
        let (l, d) = planar3_lattice(5, 17, 4, pm).unwrap();
        assert_eq!(d, LatticeBox::from_ints(&[12, 48, 64]).unwrap());
        assert!(minkowski_check(&l, &d).unwrap().pass());
    }
}

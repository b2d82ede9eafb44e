use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::modmath::PrimeModulus;

/// The lattice `{x ∈ Zⁿ : Σ cⱼ xⱼ ≡ 0 (mod p)}` for `n ∈ {2, 3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpec {
    coeffs: Vec<u64>,
    p: PrimeModulus,
}

impl LatticeSpec {
    pub fn new(coeffs: &[u64], p: PrimeModulus) -> Result<Self> {
        if !(2..=3).contains(&coeffs.len()) {
            return Err(Error::domain(format!(
                "dimension must be 2 or 3, got {}",
                coeffs.len()
            )));
        }
        let coeffs: Vec<u64> = coeffs.iter().map(|&c| c % p.get()).collect();
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::domain("all congruence coefficients vanish mod p"));
        }
        Ok(LatticeSpec { coeffs, p })
    }

    /// `Γ_λ = {(u, v) : λu ≡ v (mod p)}`.
    pub fn gamma(lambda: u64, p: PrimeModulus) -> Self {
        LatticeSpec::new(&[lambda % p.get(), p.get() - 1], p).expect("v has a unit coefficient")
    }

    /// `{(u, v, w) : c₁u + c₂v + w ≡ 0 (mod p)}`.
    pub fn planar3(c1: u64, c2: u64, p: PrimeModulus) -> Self {
        LatticeSpec::new(&[c1, c2, 1], p).expect("w has a unit coefficient")
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.dim()
            && self
                .coeffs
                .iter()
                .zip(x)
                .fold(0, |acc, (&c, &xi)| self.p.add(acc, self.p.mul(c, self.p.reduce(xi as i128))))
                == 0
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = ["u", "v", "w"];
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(vars)
            .filter(|(c, _)| **c != 0)
            .map(|(c, v)| format!("{c}{v}"))
            .collect();
        write!(f, "{{{} ≡ 0 mod {}}}", terms.join(" + "), self.p)
    }
}

/// The symmetric box `{x : |xⱼ| <= Bⱼ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBox {
    bounds: Vec<BigRational>,
}

impl LatticeBox {
    pub fn new(bounds: Vec<BigRational>) -> Result<Self> {
        if bounds.iter().any(|b| b.is_negative()) {
            return Err(Error::domain("box bounds must be nonnegative"));
        }
        Ok(LatticeBox { bounds })
    }

    pub fn from_ints(bounds: &[i64]) -> Result<Self> {
        LatticeBox::new(
            bounds
                .iter()
                .map(|&b| BigRational::from_integer(BigInt::from(b)))
                .collect(),
        )
    }

    pub fn bounds(&self) -> &[BigRational] {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    /// The dilate `tD`.
    pub fn scaled(&self, t: &BigRational) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::domain("scale factor must be positive"));
        }
        LatticeBox::new(self.bounds.iter().map(|b| b * t).collect())
    }

    /// `max_j |xⱼ| / Bⱼ`, or `None` when some `xⱼ != 0` has `Bⱼ = 0`.
    pub fn norm(&self, x: &[BigInt]) -> Option<BigRational> {
        let mut best = BigRational::zero();
        for (xi, b) in x.iter().zip(&self.bounds) {
            if xi.is_zero() {
                continue;
            }
            if b.is_zero() {
                return None;
            }
            let r = BigRational::from_integer(xi.abs()) / b;
            if r > best {
                best = r;
            }
        }
        Some(best)
    }

    pub(crate) fn check_dim(&self, lattice: &LatticeSpec) -> Result<()> {
        if self.dim() != lattice.dim() {
            return Err(Error::domain(format!(
                "box has dimension {} but lattice has dimension {}",
                self.dim(),
                lattice.dim()
            )));
        }
        Ok(())
    }
}

/// A successive minimum; `Infinite` when the box is flat in a needed direction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Minimum {
    Finite(BigRational),
    Infinite,
}

impl Minimum {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Minimum::Finite(q) => Some(q),
            Minimum::Infinite => None,
        }
    }
}

impl fmt::Display for Minimum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Minimum::Finite(q) => write!(f, "{q}"),
            Minimum::Infinite => write!(f, "inf"),
        }
    }
}

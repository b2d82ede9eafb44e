//! Exact successive minima with respect to a box norm.
//!
//! The lattice is LLL-reduced under the inner product `Σ xⱼyⱼ / Bⱼ²`. Every
//! vector of box norm at most `R = max ‖bᵢ‖_D` then lies in the Euclidean ball
//! of radius `√r·R`, which is enumerated Fincke–Pohst style. Candidates are
//! filtered with the exact box norm and selected greedily by norm.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{LatticeBox, LatticeSpec, Minimum};
use crate::error::{Error, Result};
use crate::modmath::{mod_inverse, PrimeModulus};

/// Cap on enumeration nodes.
pub const MINIMA_MAX_NODES: u64 = 10_000_000;

/// Minima together with independent vectors attaining the finite ones.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaReport {
    pub minima: Vec<Minimum>,
    pub witnesses: Vec<Vec<BigInt>>,
}

type Vector = Vec<BigInt>;

fn q(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Basis of `{x ∈ Z^r : Σ cⱼxⱼ ≡ 0}`; all of `Z^r` when every `cⱼ ≡ 0`.
fn congruence_basis(coeffs: &[u64], p: PrimeModulus) -> Vec<Vector> {
    let r = coeffs.len();
    let unit = |i: usize| -> Vector {
        (0..r).map(|j| BigInt::from((i == j) as u8)).collect()
    };
    let Some(pivot) = (0..r).rev().find(|&j| coeffs[j] != 0) else {
        return (0..r).map(unit).collect();
    };
    let neg_inv = p.neg(mod_inverse(coeffs[pivot], p).expect("nonzero mod p"));
    let mut basis = Vec::with_capacity(r);
    for i in (0..r).filter(|&i| i != pivot) {
        let mut v = unit(i);
        v[pivot] = BigInt::from(p.mul(coeffs[i], neg_inv));
        basis.push(v);
    }
    let mut v = unit(pivot);
    v[pivot] = BigInt::from(p.get());
    basis.push(v);
    basis
}

struct Reducer {
    weights: Vec<BigRational>,
}

impl Reducer {
    fn dot(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        x.iter()
            .zip(y)
            .zip(&self.weights)
            .map(|((a, b), w)| a * b * w)
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    /// Gram–Schmidt coefficients `μ` and squared lengths `‖bᵢ*‖²`.
    fn gram_schmidt(&self, basis: &[Vector]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let r = basis.len();
        let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(r);
        let mut mu = vec![vec![BigRational::zero(); r]; r];
        let mut norms = Vec::with_capacity(r);
        for i in 0..r {
            let bi: Vec<BigRational> = basis[i].iter().map(q).collect();
            let mut v = bi.clone();
            for j in 0..i {
                let m = self.dot(&bi, &star[j]) / &norms[j];
                for (vk, sk) in v.iter_mut().zip(&star[j]) {
                    *vk -= &m * sk;
                }
                mu[i][j] = m;
            }
            norms.push(self.dot(&v, &v));
            star.push(v);
        }
        (mu, norms)
    }

    fn lll(&self, mut basis: Vec<Vector>) -> Vec<Vector> {
        let r = basis.len();
        let delta = BigRational::new(3.into(), 4.into());
        let half = BigRational::new(1.into(), 2.into());
        let mut k = 1;
        while k < r {
            for j in (0..k).rev() {
                let (mu, _) = self.gram_schmidt(&basis);
                let c = (&mu[k][j] + &half).floor().to_integer();
                if !c.is_zero() {
                    let bj = basis[j].clone();
                    for (x, y) in basis[k].iter_mut().zip(&bj) {
                        *x -= &c * y;
                    }
                }
            }
            let (mu, norms) = self.gram_schmidt(&basis);
            let m = &mu[k][k - 1];
            if norms[k] >= (&delta - m * m) * &norms[k - 1] {
                k += 1;
            } else {
                basis.swap(k, k - 1);
                k = (k - 1).max(1);
            }
        }
        basis
    }
}

fn canonical_sign(mut v: Vector) -> Vector {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

fn rank(vectors: &[Vector]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors.iter().map(|v| v.iter().map(q).collect()).collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[rank][c];
                let pr = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Enumerates coefficient vectors `c` with `‖Σ cᵢbᵢ‖² <= radius_sq` (up to float slack).
fn enumerate(
    basis: &[Vector],
    mu: &[Vec<f64>],
    norms: &[f64],
    radius_sq: f64,
    visit: &mut dyn FnMut(&[i64]),
) -> Result<()> {
    let r = basis.len();
    let mut c = vec![0i64; r];
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        level: usize,
        partial: f64,
        c: &mut Vec<i64>,
        mu: &[Vec<f64>],
        norms: &[f64],
        radius_sq: f64,
        nodes: &mut u64,
        visit: &mut dyn FnMut(&[i64]),
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > MINIMA_MAX_NODES {
            return Err(Error::resource("successive minima enumeration exceeded its node budget"));
        }
        let r = c.len();
        let center: f64 = -(level + 1..r).map(|j| mu[j][level] * c[j] as f64).sum::<f64>();
        let room = ((radius_sq - partial).max(0.0) / norms[level]).sqrt();
        let w = room * (1.0 + 1e-9) + 1e-9;
        let lo = (center - w).floor() as i64;
        let hi = (center + w).ceil() as i64;
        for ci in lo..=hi {
            let d = ci as f64 - center;
            let next = partial + d * d * norms[level];
            if next > radius_sq * (1.0 + 1e-9) + 1e-9 {
                continue;
            }
            c[level] = ci;
            if level == 0 {
                visit(c);
            } else {
                rec(level - 1, next, c, mu, norms, radius_sq, nodes, visit)?;
            }
        }
        c[level] = 0;
        Ok(())
    }
    rec(r - 1, 0.0, &mut c, mu, norms, radius_sq, &mut nodes, visit)?;
    debug_assert_eq!(basis.len(), r);
    Ok(())
}

/// Successive minima `λ₁ <= … <= λₙ` of the box `D` with respect to `Γ`.
pub fn successive_minima(lattice: &LatticeSpec, body: &LatticeBox) -> Result<Vec<Minimum>> {
    Ok(minima_with_witnesses(lattice, body)?.minima)
}

/// As [`successive_minima`], also returning the attaining vectors.
pub fn minima_with_witnesses(lattice: &LatticeSpec, body: &LatticeBox) -> Result<MinimaReport> {
    body.check_dim(lattice)?;
    let n = lattice.dim();
    // coordinates with Bⱼ = 0 must vanish; work in the remaining ones
    let live: Vec<usize> = (0..n).filter(|&j| !body.bounds()[j].is_zero()).collect();
    let r = live.len();
    let mut minima = Vec::with_capacity(n);
    let mut witnesses = Vec::new();
    if r > 0 {
        let sub_coeffs: Vec<u64> = live.iter().map(|&j| lattice.coeffs()[j]).collect();
        let sub_bounds: Vec<BigRational> = live.iter().map(|&j| body.bounds()[j].clone()).collect();
        let sub_box = LatticeBox::new(sub_bounds.clone())?;
        let reducer = Reducer {
            weights: sub_bounds.iter().map(|b| (b * b).recip()).collect(),
        };
        let basis = reducer.lll(congruence_basis(&sub_coeffs, lattice.modulus()));
        let radius = basis
            .iter()
            .map(|b| sub_box.norm(b).expect("live coordinates"))
            .max()
            .expect("nonempty basis");
        let (mu, norms) = reducer.gram_schmidt(&basis);
        let to_f = |x: &BigRational| x.to_f64().unwrap_or(f64::INFINITY);
        let mu_f: Vec<Vec<f64>> = mu.iter().map(|row| row.iter().map(to_f).collect()).collect();
        let norms_f: Vec<f64> = norms.iter().map(to_f).collect();
        let radius_sq = to_f(&(&radius * &radius)) * r as f64;

        let mut found: Vec<(BigRational, Vector)> = Vec::new();
        enumerate(&basis, &mu_f, &norms_f, radius_sq, &mut |c| {
            if c.iter().all(|&ci| ci == 0) {
                return;
            }
            let mut v = vec![BigInt::zero(); r];
            for (ci, b) in c.iter().zip(&basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += y * ci;
                }
            }
            let norm = sub_box.norm(&v).expect("live coordinates");
            if norm <= radius {
                found.push((norm, canonical_sign(v)));
            }
        })?;
        found.sort();
        found.dedup();
        let mut chosen: Vec<Vector> = Vec::new();
        for (norm, v) in found {
            if chosen.len() == r {
                break;
            }
            chosen.push(v);
            if rank(&chosen) < chosen.len() {
                chosen.pop();
            } else {
                minima.push(Minimum::Finite(norm));
            }
        }
        if chosen.len() != r {
            return Err(Error::resource("enumeration did not reach full rank"));
        }
        for v in chosen {
            let mut full = vec![BigInt::zero(); n];
            for (&j, x) in live.iter().zip(v) {
                full[j] = x;
            }
            witnesses.push(full);
        }
    }
    minima.resize(n, Minimum::Infinite);
    Ok(MinimaReport { minima, witnesses })
}

/// `Π (2i/λᵢ + 1)`, with an infinite minimum contributing 1.
pub(crate) fn point_count_bound(minima: &[Minimum]) -> BigRational {
    minima
        .iter()
        .enumerate()
        .map(|(i, m)| match m {
            Minimum::Finite(l) => BigRational::from_integer(BigInt::from(2 * (i + 1))) / l + BigRational::one(),
            Minimum::Infinite => BigRational::one(),
        })
        .fold(BigRational::one(), |acc, t| acc * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn fin(n: i64, d: i64) -> Minimum {
        Minimum::Finite(BigRational::new(n.into(), d.into()))
    }

    /// Minima by brute force over a large box of lattice points.
    fn naive_minima(l: &LatticeSpec, d: &LatticeBox, reach: i64) -> Vec<Minimum> {
        let big = LatticeBox::from_ints(&vec![reach; l.dim()]).unwrap();
        let (_, pts) = super::super::box_points(l, &big).unwrap();
        let mut cand: Vec<(BigRational, Vector)> = pts
            .into_iter()
            .filter(|v| v.iter().any(|&x| x != 0))
            .filter_map(|v| {
                let v: Vector = v.into_iter().map(BigInt::from).collect();
                d.norm(&v).map(|nm| (nm, v))
            })
            .collect();
        cand.sort();
        let mut chosen = Vec::new();
        let mut out = Vec::new();
        for (nm, v) in cand {
            if chosen.len() == l.dim() {
                break;
            }
            chosen.push(v);
            if rank(&chosen) < chosen.len() {
                chosen.pop();
            } else {
                out.push(Minimum::Finite(nm));
            }
        }
        out.resize(l.dim(), Minimum::Infinite);
        out
    }

    #[test]
    fn spec_example() {
        let l = LatticeSpec::gamma(1, p(5));
        let d = LatticeBox::from_ints(&[1, 1]).unwrap();
        let rep = minima_with_witnesses(&l, &d).unwrap();
        assert_eq!(rep.minima, vec![fin(1, 1), fin(3, 1)]);
        assert_eq!(rep.witnesses[0], vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn full_square_box() {
        for lambda in 0..13 {
            let m = successive_minima(&LatticeSpec::gamma(lambda, p(13)), &LatticeBox::from_ints(&[13, 13]).unwrap())
                .unwrap();
            assert!(m[1] <= fin(1, 1));
        }
    }

    #[test]
    fn flat_boxes() {
        let l = LatticeSpec::gamma(3, p(7));
        let m = successive_minima(&l, &LatticeBox::from_ints(&[0, 0]).unwrap()).unwrap();
        assert_eq!(m, vec![Minimum::Infinite, Minimum::Infinite]);
        // only (0, 7k) survives |u| <= 0
        let m = successive_minima(&l, &LatticeBox::from_ints(&[0, 2]).unwrap()).unwrap();
        assert_eq!(m, vec![fin(7, 2), Minimum::Infinite]);
    }

    #[test]
    fn agrees_with_brute_force() {
        for (lambda, b1, b2) in [(2, 1, 1), (5, 3, 2), (7, 1, 5), (10, 4, 4), (12, 2, 7)] {
            let l = LatticeSpec::gamma(lambda, p(29));
            let d = LatticeBox::from_ints(&[b1, b2]).unwrap();
            assert_eq!(successive_minima(&l, &d).unwrap(), naive_minima(&l, &d, 60));
        }
        for (c1, c2) in [(2, 3), (5, 0), (0, 0), (7, 11)] {
            let l = LatticeSpec::planar3(c1, c2, p(13));
            let d = LatticeBox::from_ints(&[2, 3, 4]).unwrap();
            assert_eq!(successive_minima(&l, &d).unwrap(), naive_minima(&l, &d, 30));
        }
    }

    #[test]
    fn huge_modulus() {
        let big = crate::modmath::prev_prime(1 << 62).unwrap();
        let l = LatticeSpec::gamma(123_456_789_123, p(big));
        let m = successive_minima(&l, &LatticeBox::from_ints(&[1, 1]).unwrap()).unwrap();
        let prod = m[0].finite().unwrap() * m[1].finite().unwrap();
        // Minkowski: λ₁λ₂ vol(D) <= 4 det, and λ₁λ₂ >= det / 2 for the square
        assert!(prod <= BigRational::from_integer(BigInt::from(big)));
        assert!(prod * BigRational::from_integer(2.into()) >= BigRational::from_integer(BigInt::from(big)));
    }
}

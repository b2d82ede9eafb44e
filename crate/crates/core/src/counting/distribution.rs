//! Value distributions of sums drawn from residue sets.

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modmath::PrimeModulus;

/// Largest modulus the dense backend will allocate a count vector for.
pub const DENSE_MAX_P: u64 = 1 << 24;
/// Largest number of pair combinations the sparse backend will hash.
pub const SPARSE_MAX_WORK: u64 = 1 << 28;

/// Storage strategy for a [`ResidueDistribution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Length-`p` count vector built by repeated convolution with each set's indicator.
    Dense,
    /// Hash map of nonzero counts built by combining two half-sum tables.
    Sparse,
    #[default]
    Auto,
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Backend::Dense),
            "sparse" => Ok(Backend::Sparse),
            "auto" => Ok(Backend::Auto),
            other => Err(Error::config(format!("unknown backend `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
enum Store {
    Dense(Vec<u64>),
    Sparse(HashMap<u64, u64>),
}

/// Map `λ ↦ #{tuples whose sum is λ}` over `F_p`.
#[derive(Debug, Clone)]
pub struct ResidueDistribution {
    p: PrimeModulus,
    store: Store,
    total_mass: u64,
}

impl ResidueDistribution {
    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.store, Store::Dense(_))
    }

    /// Σ_λ T(λ), the number of tuples.
    pub fn total_mass(&self) -> u64 {
        self.total_mass
    }

    pub fn get(&self, lambda: u64) -> u64 {
        let lambda = lambda % self.p.get();
        match &self.store {
            Store::Dense(v) => v[lambda as usize],
            Store::Sparse(m) => m.get(&lambda).copied().unwrap_or(0),
        }
    }

    /// Nonzero entries in no particular order.
    pub fn iter(&self) -> Box<dyn Iterator<Item = (u64, u64)> + '_> {
        match &self.store {
            Store::Dense(v) => Box::new(
                v.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i as u64, c)),
            ),
            Store::Sparse(m) => Box::new(m.iter().map(|(&k, &c)| (k, c))),
        }
    }

    /// Nonzero entries sorted by residue.
    pub fn entries(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<_> = self.iter().collect();
        out.sort_unstable();
        out
    }

    /// Number of residues attained.
    pub fn support_size(&self) -> u64 {
        match &self.store {
            Store::Dense(v) => v.iter().filter(|&&c| c != 0).count() as u64,
            Store::Sparse(m) => m.len() as u64,
        }
    }

    pub fn max_count(&self) -> u64 {
        self.iter().map(|(_, c)| c).max().unwrap_or(0)
    }

    /// Σ_λ T(λ)², the number of pairs of tuples with equal sums.
    pub fn energy(&self) -> BigUint {
        let mut small: u128 = 0;
        let mut big = BigUint::default();
        for (_, c) in self.iter() {
            let sq = c as u128 * c as u128;
            match small.checked_add(sq) {
                Some(s) => small = s,
                None => {
                    big += small;
                    small = sq;
                }
            }
        }
        big + small
    }

    /// Converts to the other storage layout (or clones).
    pub fn to_sparse(&self) -> ResidueDistribution {
        ResidueDistribution {
            p: self.p,
            store: Store::Sparse(self.iter().collect()),
            total_mass: self.total_mass,
        }
    }
}

impl PartialEq for ResidueDistribution {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.total_mass == other.total_mass && self.entries() == other.entries()
    }
}

impl Eq for ResidueDistribution {}

fn total_mass(sets: &[Vec<u64>]) -> Result<u64> {
    sets.iter().try_fold(1u64, |acc, s| {
        acc.checked_mul(s.len() as u64)
            .filter(|&m| m <= 1 << 63)
            .ok_or_else(|| Error::resource("tuple count exceeds 2^63"))
    })
}

fn choose_backend(backend: Backend, p: PrimeModulus, mass: u64) -> Backend {
    match backend {
        Backend::Auto if p.get() <= DENSE_MAX_P && mass >= p.get() / 8 => Backend::Dense,
        Backend::Auto => Backend::Sparse,
        b => b,
    }
}

/// Distribution of `s_1 + ... + s_m` with `s_i` ranging over `sets[i]`.
///
/// An empty list of sets gives the point mass at 0.
pub fn sum_distribution(
    sets: &[Vec<u64>],
    p: PrimeModulus,
    backend: Backend,
) -> Result<ResidueDistribution> {
    let mass = total_mass(sets)?;
    match choose_backend(backend, p, mass) {
        Backend::Dense => dense_distribution(sets, p, mass),
        _ => sparse_distribution(sets, p, mass),
    }
}

fn dense_distribution(sets: &[Vec<u64>], p: PrimeModulus, mass: u64) -> Result<ResidueDistribution> {
    if p.get() > DENSE_MAX_P {
        return Err(Error::resource(format!(
            "p = {p} exceeds the dense backend limit 2^24; use the sparse backend"
        )));
    }
    let m = p.get() as usize;
    let mut cur = vec![0u64; m];
    cur[0] = 1;
    let mut support = 1usize;
    for set in sets {
        let threads = rayon::current_num_threads().max(1);
        let next = if support.saturating_mul(threads) < m {
            scatter(&cur, set, p)
        } else {
            gather(&cur, set, p)
        };
        cur = next;
        support = cur.iter().filter(|&&c| c != 0).count();
    }
    Ok(ResidueDistribution { p, store: Store::Dense(cur), total_mass: mass })
}

fn scatter(cur: &[u64], set: &[u64], p: PrimeModulus) -> Vec<u64> {
    let mut out = vec![0u64; cur.len()];
    for (lambda, &c) in cur.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for &y in set {
            out[p.add(lambda as u64, y) as usize] += c;
        }
    }
    out
}

fn gather(cur: &[u64], set: &[u64], p: PrimeModulus) -> Vec<u64> {
    let mut out = vec![0u64; cur.len()];
    out.par_chunks_mut(4096).enumerate().for_each(|(chunk, slot)| {
        let base = chunk * 4096;
        for (off, o) in slot.iter_mut().enumerate() {
            let lambda = (base + off) as u64;
            *o = set.iter().map(|&y| cur[p.sub(lambda, y) as usize]).sum();
        }
    });
    out
}

fn half_table(sets: &[Vec<u64>], p: PrimeModulus) -> HashMap<u64, u64> {
    let mut cur: HashMap<u64, u64> = HashMap::from([(0, 1)]);
    for set in sets {
        let mut next = HashMap::with_capacity(cur.len().saturating_mul(set.len()).min(1 << 24));
        for (&lambda, &c) in &cur {
            for &y in set {
                *next.entry(p.add(lambda, y)).or_insert(0) += c;
            }
        }
        cur = next;
    }
    cur
}

fn sparse_distribution(sets: &[Vec<u64>], p: PrimeModulus, mass: u64) -> Result<ResidueDistribution> {
    let split = sets.len().div_ceil(2);
    let left = half_table(&sets[..split], p);
    let right = half_table(&sets[split..], p);
    let work = (left.len() as u64).saturating_mul(right.len() as u64);
    if work > SPARSE_MAX_WORK {
        return Err(Error::resource(format!(
            "sparse combination needs {work} steps (limit 2^28); use the dense backend"
        )));
    }
    let right: Vec<(u64, u64)> = right.into_iter().collect();
    let left: Vec<(u64, u64)> = left.into_iter().collect();
    let merged = left
        .par_chunks(256)
        .map(|chunk| {
            let mut acc: HashMap<u64, u64> = HashMap::new();
            for &(l, cl) in chunk {
                for &(r, cr) in &right {
                    *acc.entry(p.add(l, r)).or_insert(0) += cl * cr;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            if a.len() < b.len() {
                return merge_into(b, a);
            }
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        });
    Ok(ResidueDistribution { p, store: Store::Sparse(merged), total_mass: mass })
}

fn merge_into(mut big: HashMap<u64, u64>, small: HashMap<u64, u64>) -> HashMap<u64, u64> {
    for (k, c) in small {
        *big.entry(k).or_insert(0) += c;
    }
    big
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    #[test]
    fn empty_product_is_point_mass() {
        for b in [Backend::Dense, Backend::Sparse] {
            let d = sum_distribution(&[], p(7), b).unwrap();
            assert_eq!(d.entries(), vec![(0, 1)]);
            assert_eq!(d.total_mass(), 1);
        }
    }

    #[test]
    fn backends_agree_on_small_sets() {
        let sets = vec![vec![1, 4, 5], vec![1, 4, 5], vec![2, 3]];
        let d = sum_distribution(&sets, p(7), Backend::Dense).unwrap();
        let s = sum_distribution(&sets, p(7), Backend::Sparse).unwrap();
        assert!(d.is_dense() && !s.is_dense());
        assert_eq!(d, s);
        assert_eq!(d.total_mass(), 18);
        assert_eq!(d.iter().map(|(_, c)| c).sum::<u64>(), 18);
    }

    #[test]
    fn dense_refuses_huge_modulus() {
        let big = p(crate::modmath::next_prime(1 << 30));
        let err = sum_distribution(&[vec![1]], big, Backend::Dense).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        // auto falls back to sparse
        assert!(!sum_distribution(&[vec![1]], big, Backend::Auto).unwrap().is_dense());
    }

    #[test]
    fn energy_matches_sum_of_squares() {
        let sets = vec![vec![1, 4, 5], vec![1, 4, 5]];
        let d = sum_distribution(&sets, p(7), Backend::Sparse).unwrap();
        assert_eq!(d.energy(), BigUint::from(19u32));
    }
}

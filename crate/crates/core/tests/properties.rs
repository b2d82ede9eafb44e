//! Property tests for the invariants each module promises.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

use kloosterman_lab::counting::{count_j2k, inverse_sum_distribution, Backend};
use kloosterman_lab::expsums::linear_incomplete;
use kloosterman_lab::lattice::{successive_minima, LatticeBox, LatticeSpec, Minimum};
use kloosterman_lab::modmath::{batch_inverse, mod_inverse, prime_count_ap, primes_upto, smooth_count};
use kloosterman_lab::polyalg::{sylvester_resultant, IntPoly};
use kloosterman_lab::{Interval, PrimeModulus};

const PRIMES: [u64; 8] = [7, 101, 1009, 10_007, 65_537, 1_000_003, 2_147_483_647, 4_611_686_018_427_387_847];

fn modulus() -> impl Strategy<Value = PrimeModulus> {
    prop::sample::select(PRIMES.to_vec()).prop_map(|p| PrimeModulus::new(p).unwrap())
}

/// A prime modulus with an interval inside [1, p−1].
fn interval(max_len: u64) -> impl Strategy<Value = (PrimeModulus, Interval)> {
    prop::sample::select(vec![101u64, 1009, 10_007]).prop_flat_map(move |p| {
        (1..=max_len).prop_flat_map(move |n| {
            (0..=p - 1 - n).prop_map(move |a| (PrimeModulus::new(p).unwrap(), Interval::new(a, n).unwrap()))
        })
    })
}

proptest! {
    #[test]
    fn inverse_is_an_involution(p in modulus(), x in 1u64..u64::MAX) {
        let x = x % p.get();
        prop_assume!(x != 0);
        let y = mod_inverse(x, p).unwrap();
        prop_assert_eq!(p.mul(x, y), 1);
        prop_assert_eq!(mod_inverse(y, p).unwrap(), x);
    }

    #[test]
    fn batch_inverse_matches_single(p in modulus(), xs in prop::collection::vec(1u64..u64::MAX, 0..40)) {
        let xs: Vec<u64> = xs.into_iter().map(|x| x % p.get()).filter(|&x| x != 0).collect();
        let single: Vec<u64> = xs.iter().map(|&x| mod_inverse(x, p).unwrap()).collect();
        prop_assert_eq!(batch_inverse(&xs, p).unwrap(), single);
    }

    #[test]
    fn smooth_count_grows_with_y(x in 1u64..20_000, y in 1u64..200) {
        prop_assert!(smooth_count(x, y).unwrap() <= smooth_count(x, y + 1).unwrap());
        prop_assert!(smooth_count(x, y).unwrap() <= x);
    }

    #[test]
    fn progressions_partition_the_primes(x in 2u64..20_000, q in 1u64..40) {
        let coprime = (0..q).filter(|&a| a.gcd(&q) == 1);
        let total: u64 = coprime.map(|a| prime_count_ap(x, q, a).unwrap()).sum();
        // the only primes outside the coprime classes are those dividing q
        let primes = primes_upto(x);
        let dividing = primes.iter().filter(|&&l| q % l == 0).count() as u64;
        prop_assert_eq!(total + dividing, primes.len() as u64);
    }

    #[test]
    fn energy_sits_between_diagonal_and_trivial((p, iv) in interval(15), k in 1u32..=3) {
        let dist = inverse_sum_distribution(&iv, k, p, Backend::Auto).unwrap();
        let n = iv.len();
        prop_assert_eq!(dist.total_mass(), n.pow(k));
        let j = count_j2k(&iv, k, p, Backend::Auto).unwrap().count;
        prop_assert!(j >= BigUint::from(n.pow(k)));
        prop_assert!(j <= BigUint::from(n).pow(2 * k - 1));
    }

    #[test]
    fn linear_sum_respects_triangle_and_conjugation((p, iv) in interval(60), a in 1u64..10_000) {
        let a = a % p.get();
        prop_assume!(a != 0);
        let s = linear_incomplete(a, &iv, p).unwrap();
        prop_assert!(s.modulus() <= iv.len() as f64 + 1e-9);
        let t = linear_incomplete(p.get() - a, &iv, p).unwrap();
        prop_assert!((s.value.conj() - t.value).norm() < 1e-9);
    }

    #[test]
    fn scaling_the_box_scales_the_minima(
        lambda in 1u64..10_007,
        b in prop::collection::vec(1i64..40, 2),
        t in 1i64..6,
    ) {
        let p = PrimeModulus::new(10_007).unwrap();
        let l = LatticeSpec::gamma(lambda, p);
        let body = LatticeBox::from_ints(&b).unwrap();
        let factor = BigRational::from_integer(BigInt::from(t));
        let base = successive_minima(&l, &body).unwrap();
        let scaled = successive_minima(&l, &body.scaled(&factor).unwrap()).unwrap();
        for (m, s) in base.iter().zip(&scaled) {
            match (m, s) {
                (Minimum::Finite(m), Minimum::Finite(s)) => prop_assert_eq!(m / &factor, s.clone()),
                _ => prop_assert!(false, "unexpected infinite minimum"),
            }
        }
    }

    #[test]
    fn resultant_is_antisymmetric(
        pc in prop::collection::vec(-9i64..10, 2..6),
        qc in prop::collection::vec(-9i64..10, 2..6),
    ) {
        let (p, q) = (IntPoly::from_i64(&pc), IntPoly::from_i64(&qc));
        let (Some(m), Some(n)) = (p.degree(), q.degree()) else { return Ok(()) };
        prop_assume!(m >= 1 && n >= 1);
        let sign = if (m * n) % 2 == 0 { 1 } else { -1 };
        let pq = sylvester_resultant(&p, &q).unwrap();
        prop_assert_eq!(pq * sign, sylvester_resultant(&q, &p).unwrap());
    }
}

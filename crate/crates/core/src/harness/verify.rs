//! Invariant suites behind `klab verify`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::oracle::{naive_j2k, naive_max_linear};
use crate::counting::{count_j2k, inverse_sum_distribution, rational_j2k, sum_distribution, sumset_size, Backend};
use crate::error::{Error, Result};
use crate::expsums::{
    archimedean_bilinear, bilinear, choose_archimedean_k, complete_kloosterman, linear_incomplete,
    max_linear_over_a, multilinear, CoeffSeq,
};
use crate::lattice::{minkowski_check, LatticeBox, LatticeSpec};
use crate::modmath::{
    batch_inverse, divisor_count, mod_inverse, next_prime, primes_upto, rational_reconstruct, Interval,
    PrimeModulus,
};
use crate::polyalg::{
    build_solution_poly, hyperbola_divisor_solutions, identity_check, identity_sides, sylvester_resultant,
    IntPoly,
};

/// The named invariant suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Identities,
    Lattice,
    Weil,
    Transfer,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "oracle" => Ok(Suite::Oracle),
            "identities" => Ok(Suite::Identities),
            "lattice" => Ok(Suite::Lattice),
            "weil" => Ok(Suite::Weil),
            "transfer" => Ok(Suite::Transfer),
            "all" => Ok(Suite::All),
            other => Err(Error::config(format!(
                "unknown suite '{other}' (expected oracle, identities, lattice, weil, transfer or all)"
            ))),
        }
    }
}

/// Outcome of one named check: how many of its instances passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: u64,
    pub total: u64,
}

impl Check {
    fn new(name: impl Into<String>, results: impl IntoIterator<Item = bool>) -> Self {
        let (mut passed, mut total) = (0, 0);
        for ok in results {
            total += 1;
            passed += ok as u64;
        }
        Check { name: name.into(), passed, total }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.ok() { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} {}: {}/{}", c.name, c.passed, c.total)?;
        }
        Ok(())
    }
}

pub fn verify(suite: &str, seed: u64) -> Result<VerifyReport> {
    run_suite(suite.parse()?, seed)
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = match suite {
        Suite::Oracle => oracle_suite()?,
        Suite::Identities => identities_suite(&mut rng)?,
        Suite::Lattice => lattice_suite(&mut rng)?,
        Suite::Weil => weil_suite(&mut rng)?,
        Suite::Transfer => transfer_suite()?,
        Suite::All => {
            let mut all = Vec::new();
            for s in [Suite::Oracle, Suite::Identities, Suite::Lattice, Suite::Weil, Suite::Transfer] {
                all.extend(run_suite(s, seed)?.checks);
            }
            all
        }
    };
    Ok(VerifyReport { checks })
}

/// Every `(p, I, k)` with `p ∈ {7, 11, 13, 101}`, `N <= 12`, `0 ∉ I`, `k ∈ {1, 2, 3}`.
pub fn small_grid() -> Vec<(PrimeModulus, Interval, u32)> {
    let mut out = Vec::new();
    for p in [7u64, 11, 13, 101] {
        let pm = PrimeModulus::new(p).expect("prime");
        for n in 1..=12.min(p - 1) {
            for a in 0..=p - 1 - n {
                for k in 1..=3 {
                    out.push((pm, Interval::new(a, n).expect("valid"), k));
                }
            }
        }
    }
    out
}

fn oracle_suite() -> Result<Vec<Check>> {
    let grid = small_grid();
    let results = grid
        .par_iter()
        .map(|&(p, iv, k)| -> Result<[bool; 5]> {
            let fast = count_j2k(&iv, k, p, Backend::Auto)?.count;
            let naive = naive_j2k(&iv, k, p)?;
            let dense = inverse_sum_distribution(&iv, k, p, Backend::Dense)?;
            let sparse = inverse_sum_distribution(&iv, k, p, Backend::Sparse)?;
            let mass = iv.len().pow(k);
            let sumset = sumset_size(&iv, k, p, Backend::Auto)?;
            // different sets per factor: alternate lengths N and N − 1
            let sets: Vec<Vec<u64>> = (0..2 * k)
                .map(|i| {
                    let len = if i % 2 == 1 && iv.len() > 1 { iv.len() - 1 } else { iv.len() };
                    Interval::new(iv.offset(), len)?.inverses(p)
                })
                .collect::<Result<_>>()?;
            let t_max = sum_distribution(&sets, p, Backend::Dense)?.max_count();
            let energies = sets
                .iter()
                .map(|s| Ok(sum_distribution(&vec![s.clone(); k as usize], p, Backend::Dense)?.energy()))
                .collect::<Result<Vec<BigUint>>>()?;
            let prod: BigUint = energies.iter().product();
            Ok([
                fast == naive,
                dense.total_mass() == mass && sparse.total_mass() == mass,
                dense == sparse,
                Pow::pow(BigUint::from(t_max), 2 * k) <= prod,
                BigUint::from(sumset) * &fast >= Pow::pow(BigUint::from(iv.len()), 2 * k),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let col = |i: usize| results.iter().map(move |r| r[i]);
    let mut checks = vec![
        Check::new("count_J2k naive≡fast", col(0)),
        Check::new("distribution mass = N^k", col(1)),
        Check::new("dense≡sparse distribution", col(2)),
        Check::new("T_2n(λ) <= (J_1…J_2n)^(1/2n)", col(3)),
        Check::new("|k(I*)| >= N^2k / J_2k", col(4)),
    ];
    let mut rec = Vec::new();
    for p in primes_upto(101).into_iter().filter(|&p| p >= 3) {
        let pm = PrimeModulus::new(p)?;
        let bound = (p as f64).sqrt().floor() as i64;
        for j in 0..p {
            let r = rational_reconstruct(j, pm);
            rec.push(
                r.numer().abs() <= bound
                    && (1..=bound).contains(&r.denom())
                    && r.to_residue(pm).ok() == Some(j),
            );
        }
    }
    checks.push(Check::new("rational reconstruction, p <= 101", rec));
    Ok(checks)
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=5).into())
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> IntPoly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-9..=9)).collect();
    let mut lead = 0;
    while lead == 0 {
        lead = rng.gen_range(-9..=9);
    }
    c.push(lead);
    IntPoly::from_i64(&c)
}

fn identities_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut ids = Vec::new();
    for _ in 0..500 {
        let [x, y, z, a1, a2] = std::array::from_fn(|_| random_rational(rng));
        let e1 = &x + &y + &z;
        let b1 = &x * &y * &z - &a1 * &e1;
        let b2 = &x * &y + &y * &z + &z * &x - &a2 * &e1;
        ids.push(identity_check(&x, &y, &z, &a1, &a2, &b1, &b2)?);
    }
    let q = |n: i64| BigRational::from_integer(n.into());
    let (l, r) = identity_sides(&q(1), &q(2), &q(3), &q(1), &q(1), &q(0), &q(5))?;
    ids.push(l == q(21) && r == q(21));
    checks.push(Check::new("cubic identity on random instances", ids));

    let mut hyp = Vec::new();
    for a in -6i64..=6 {
        for b in -6i64..=6 {
            if a == 0 || b == 0 {
                continue;
            }
            let sols = hyperbola_divisor_solutions(a, b, 30)?;
            let mut brute = Vec::new();
            for x in -30i64..=30 {
                for y in -30i64..=30 {
                    if a * x * y + b * x + b * y == 0 {
                        brute.push((x, y));
                    }
                }
            }
            let tau = divisor_count((b * b) as u64)?;
            hyp.push(sols == brute && sols.len() as u64 <= 2 * tau);
        }
    }
    checks.push(Check::new("Axy+Bx+By=0 divisor solutions", hyp));

    let mut roots = Vec::new();
    for _ in 0..200 {
        let deg = rng.gen_range(1..=3);
        let rts: Vec<BigInt> = (0..deg).map(|_| BigInt::from(rng.gen_range(-10..=10))).collect();
        let mut lc = 0;
        while lc == 0 {
            lc = rng.gen_range(-5..=5);
        }
        let p = IntPoly::from_roots(lc, &rts);
        let qd = rng.gen_range(1..=3);
        let qp = random_poly(rng, qd);
        let expected = Pow::pow(BigInt::from(lc), qd as u32) * rts.iter().map(|r| qp.eval(r)).product::<BigInt>();
        let res = sylvester_resultant(&p, &qp)?;
        let swapped = sylvester_resultant(&qp, &p)?;
        let sign = if (deg * qd) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        roots.push(res == expected && swapped == sign * &res);
    }
    checks.push(Check::new("Res = lc^deg Q · Π Q(root)", roots));

    let mut common = Vec::new();
    let small_primes = primes_upto(1000);
    while common.len() < 100 {
        let p = small_primes[rng.gen_range(1..small_primes.len())];
        let t = rng.gen_range(0..p) as i64;
        let lin = IntPoly::from_i64(&[-t, 1]);
        let mut shifted = || {
            let d = rng.gen_range(0..=2);
            let r = random_poly(rng, d);
            &(&lin * &r) + &(&IntPoly::constant(p) * &random_poly(rng, 1))
        };
        let (pp, qq) = (shifted(), shifted());
        if pp.degree().unwrap_or(0) < 1 || qq.degree().unwrap_or(0) < 1 {
            continue;
        }
        let res = sylvester_resultant(&pp, &qq)?;
        common.push((res % BigInt::from(p)).is_zero());
    }
    checks.push(Check::new("common root mod p ⇒ p | Res", common));

    let mut sol = vec![build_solution_poly(&[1, 2, 3, 4])? == IntPoly::from_i64(&[22, 20, 4])];
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let mut xs: Vec<i64> = Vec::new();
        while xs.len() < 2 * k {
            let x = rng.gen_range(1..=40);
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        let poly = build_solution_poly(&xs)?;
        let deg_ok = poly.degree().is_none_or(|d| d + 2 <= 2 * k);
        sol.push(deg_ok && !poly.eval(&BigInt::from(-xs[0])).is_zero());
    }
    checks.push(Check::new("solution polynomial degree and P(-x1) != 0", sol));
    Ok(checks)
}

fn random_bound(rng: &mut ChaCha8Rng, max: i64) -> BigRational {
    let den = rng.gen_range(1..=3i64);
    BigRational::new(rng.gen_range(0..=max * den).into(), den.into())
}

fn lattice_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let primes: Vec<u64> = primes_upto(10007).into_iter().filter(|&p| p >= 3).collect();
    let instances: Vec<(LatticeSpec, LatticeBox)> = (0..600)
        .map(|i| {
            let p = PrimeModulus::new(primes[rng.gen_range(0..primes.len())])?;
            if i < 500 {
                let b = vec![random_bound(rng, 50), random_bound(rng, 50)];
                Ok((LatticeSpec::gamma(rng.gen_range(0..p.get()), p), LatticeBox::new(b)?))
            } else {
                let b = (0..3).map(|_| random_bound(rng, 12)).collect();
                let (c1, c2) = (rng.gen_range(0..p.get()), rng.gen_range(0..p.get()));
                Ok((LatticeSpec::planar3(c1, c2, p), LatticeBox::new(b)?))
            }
        })
        .collect::<Result<_>>()?;
    let reports = instances
        .par_iter()
        .map(|(l, d)| minkowski_check(l, d))
        .collect::<Result<Vec<_>>>()?;
    let (two, three) = reports.split_at(500);
    let ordered = |r: &crate::lattice::MinkowskiReport| r.minima.windows(2).all(|w| w[0] <= w[1]);
    Ok(vec![
        Check::new("2D point count vs successive minima", two.iter().map(|r| r.lemma_holds)),
        Check::new("2D product of minima vs (2n+1)!!", two.iter().map(|r| r.corollary_holds)),
        Check::new("3D point count vs successive minima", three.iter().map(|r| r.lemma_holds)),
        Check::new("3D product of minima vs (2n+1)!!", three.iter().map(|r| r.corollary_holds)),
        Check::new("minima nondecreasing, odd point counts", reports.iter().map(|r| ordered(r) && r.count % 2 == 1)),
    ])
}

fn weil_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut weil = Vec::new();
    for p in [1009u64, 10007] {
        let pm = PrimeModulus::new(p)?;
        let pairs: Vec<(u64, u64)> = (0..100).map(|_| (rng.gen_range(1..p), rng.gen_range(1..p))).collect();
        weil.extend(pairs.par_iter().map(|&(a, b)| {
            complete_kloosterman(a, b, pm).modulus() <= 2.0 * (p as f64).sqrt() + 1e-6
        }).collect::<Vec<_>>());
    }
    checks.push(Check::new("Weil |K(a,b;p)| <= 2√p", weil));
    let spot = complete_kloosterman(1, 1, PrimeModulus::new(5)?).value;
    checks.push(Check::new("K(1,1;5) = 0.3820", [(spot.re - 0.3820).abs() < 1e-4 && spot.im.abs() < 1e-4]));

    let mut scan = Vec::new();
    for p in primes_upto(101).into_iter().filter(|&p| p >= 3) {
        let pm = PrimeModulus::new(p)?;
        let ivs: Vec<Interval> = (1..p)
            .flat_map(|n| (0..p - n).map(move |a| Interval::new(a, n)))
            .collect::<Result<_>>()?;
        scan.extend(ivs.par_iter().map(|iv| -> Result<bool> {
            let (a1, m1) = max_linear_over_a(iv, pm)?;
            let (a2, m2) = naive_max_linear(iv, pm)?;
            Ok((m1 - m2).abs() <= 1e-9 && a1 == a2)
        }).collect::<Result<Vec<_>>>()?);
    }
    checks.push(Check::new("DFT scan ≡ direct maximum, p <= 101", scan));

    let mut conj = Vec::new();
    for _ in 0..50 {
        let p = PrimeModulus::new(next_prime(rng.gen_range(3..2000)))?;
        let n = rng.gen_range(1..p.get().min(60));
        let iv = Interval::new(rng.gen_range(0..p.get() - n), n)?;
        let a = rng.gen_range(1..p.get());
        let s = linear_incomplete(a, &iv, p)?.value;
        let t = linear_incomplete(p.get() - a, &iv, p)?.value;
        conj.push((s - t.conj()).norm() <= 1e-9);
    }
    checks.push(Check::new("S(p−a) = conj S(a)", conj));

    let mut holder = Vec::new();
    let small: Vec<u64> = primes_upto(101).into_iter().filter(|&p| p >= 5).collect();
    for _ in 0..50 {
        let p = PrimeModulus::new(small[rng.gen_range(0..small.len())])?;
        let m = p.get();
        let (n1, n2) = (rng.gen_range(1..m.min(13)), rng.gen_range(1..m.min(13)));
        let i1 = Interval::new(rng.gen_range(0..m - n1), n1)?;
        let i2 = Interval::new(rng.gen_range(0..m - n2), n2)?;
        let a = rng.gen_range(1..m);
        let unit = |len: u64, rng: &mut ChaCha8Rng| {
            CoeffSeq::new((0..len).map(|_| num_complex::Complex64::from_polar(1.0, rng.gen_range(0.0..6.3))).collect())
        };
        let (c1, c2) = (unit(n1, rng)?, unit(n2, rng)?);
        let s = bilinear(a, &i1, &i2, &c1, &c2, p)?.modulus();
        let j1 = count_j2k(&i1, 2, p, Backend::Dense)?.count;
        let j2 = count_j2k(&i2, 2, p, Backend::Dense)?.count;
        // |S|^8 <= p N1^6 N2^6 J4(I1) J4(I2)
        let lhs = s.powi(8);
        let rhs = m as f64 * (n1 as f64).powi(6) * (n2 as f64).powi(6) * to_f64(&j1) * to_f64(&j2);
        holder.push(lhs <= rhs * (1.0 + 1e-6));
    }
    checks.push(Check::new("bilinear Hölder bound, k1 = k2 = 2", holder));

    let p5 = PrimeModulus::new(5)?;
    let ivs = vec![Interval::new(0, 2)?; 3];
    let cs = vec![CoeffSeq::ones(2); 3];
    let spot = multilinear(1, &ivs, &cs, p5)?.value;
    let zero = multilinear(0, &ivs, &cs, p5)?.value;
    let iv = Interval::new(3, 9)?;
    let p31 = PrimeModulus::new(31)?;
    let single = multilinear(7, &[iv], &[CoeffSeq::ones(9)], p31)?.value;
    checks.push(Check::new(
        "multilinear consistency",
        [
            (spot.re + 2.0).abs() < 1e-3 && (spot.im + 3.078).abs() < 1e-3,
            (zero.re - 8.0).abs() < 1e-12 && zero.im.abs() < 1e-12,
            (single - linear_incomplete(7, &iv, p31)?.value).norm() < 1e-12,
        ],
    ));

    let mut arch = Vec::new();
    for _ in 0..100 {
        let (n1, n2) = (rng.gen_range(1..40), rng.gen_range(1..40));
        let xi = rng.gen_range(-1e6..1e6);
        arch.push(archimedean_bilinear(xi, n1, n2).modulus() <= (n1 * n2) as f64 * (1.0 + 1e-12));
    }
    arch.push(archimedean_bilinear(0.0, 7, 9).value == num_complex::Complex64::new(63.0, 0.0));
    for _ in 0..1000 {
        let n = rng.gen_range(2..30u64);
        let ratio = 10f64.powf(rng.gen_range(0.0..12.0));
        let k = choose_archimedean_k(ratio, n)? as i32;
        let nf = n as f64;
        arch.push(nf.powi(2 * (k - 1)) <= ratio && ratio < nf.powi(2 * k));
    }
    checks.push(Check::new("Archimedean sum bounds and k choice", arch));
    Ok(checks)
}

fn to_f64(x: &BigUint) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::INFINITY)
}

fn transfer_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut small = Vec::new();
    for n in [6u64, 8, 10] {
        let p = PrimeModulus::new(next_prime(6 * n.pow(6) + 1))?;
        for k in [2u32, 3] {
            let modular = count_j2k(&Interval::initial(n)?, k, p, Backend::Sparse)?.count;
            small.push(modular == rational_j2k(n, k)?);
        }
    }
    checks.push(Check::new("J_2k mod p = rational count, p > 6N^6", small));
    let p = PrimeModulus::new(next_prime(2_000_000_000_000_000_000))?;
    let in_regime = Pow::pow(BigUint::from(10u32), 18u32) < BigUint::from(p.get());
    let modular = count_j2k(&Interval::initial(10)?, 3, p, Backend::Sparse)?.count;
    checks.push(Check::new(
        "J_6 mod p = rational count, N = 10, p ≈ 2·10^18",
        [in_regime && modular == rational_j2k(10, 3)?],
    ));
    let inv_ok = (1..p.get().min(1000)).all(|x| p.mul(x, mod_inverse(x, p).unwrap_or(0)) == 1);
    let xs: Vec<u64> = (1..=1000).map(|i| i * 7_919_000_000_007 % p.get()).collect();
    let batch = batch_inverse(&xs, p)?;
    let batch_ok = xs.iter().zip(&batch).all(|(&x, &y)| mod_inverse(x, p).ok() == Some(y));
    checks.push(Check::new("inverse arithmetic at 61 bits", [inv_ok, batch_ok]));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(verify("bogus", 0), Err(Error::Config(_))));
    }

    #[test]
    fn grid_size() {
        // Σ_p Σ_{N <= min(12, p-1)} (p − N), times three values of k
        assert_eq!(small_grid().len(), 3 * (21 + 55 + 78 + 1134));
    }

    #[test]
    fn quick_suites_pass() {
        for s in [Suite::Identities, Suite::Transfer] {
            let r = run_suite(s, 1).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }
}

//! Incomplete, bilinear, multilinear and complete Kloosterman sums.

use kloosterman_lab::expsums::{
    bilinear, complete_kloosterman, linear_incomplete, multilinear, prime_sum_power_r, CoeffSeq,
};
use kloosterman_lab::{Interval, PrimeModulus};

fn main() -> kloosterman_lab::Result<()> {
    let p = PrimeModulus::new(10_007)?;
    let i = Interval::initial(100)?;

    let s = linear_incomplete(3, &i, p)?;
    println!("Σ e_p(3x⁻¹), x ≤ 100: |S| = {:.4}", s.modulus());

    let ones = CoeffSeq::ones(100);
    let b = bilinear(3, &i, &i, &ones, &ones, p)?;
    println!("bilinear: |S| = {:.4}, normalized {:.4}", b.modulus(), b.normalized());

    let short = Interval::initial(12)?;
    let ivs = vec![short; 4];
    let cs = vec![CoeffSeq::ones(12); 4];
    let m = multilinear(3, &ivs, &cs, p)?;
    println!("4-linear over [1,12]: |S| = {:.4}, normalized {:.4}", m.modulus(), m.normalized());

    let q = prime_sum_power_r(3, 1000, 1, p)?;
    println!("Σ_{{q ≤ 1000 prime}} e_p(3q⁻¹): |S| = {:.4} over {} terms", q.modulus(), q.terms);

    let k = complete_kloosterman(1, 1, p);
    println!("K(1,1;p) = {:.4}, Weil bound 2√p = {:.4}", k.re(), 2.0 * (p.get() as f64).sqrt());
    Ok(())
}

//! max over a of |Σ_{x∈I} e_p(ax⁻¹)|: exact FFT scan for moderate p,
//! stratified sampling beyond it.

use kloosterman_lab::expsums::{linear_spectrum, max_linear_over_a, sampled_max_linear};
use kloosterman_lab::{Interval, PrimeModulus};

fn main() -> kloosterman_lab::Result<()> {
    let p = PrimeModulus::new(65_537)?;
    let i = Interval::initial(200)?;
    let (a, mag) = max_linear_over_a(&i, p)?;
    println!("p = {p}, N = 200: max at a = {a}, |S| = {mag:.4}, √N log p = {:.1}", 200f64.sqrt() * (p.get() as f64).ln());

    let spec = linear_spectrum(&i, p)?;
    let mean_sq: f64 = spec.iter().skip(1).map(|z| z.norm_sqr()).sum::<f64>() / (p.get() - 1) as f64;
    println!("mean |S(a)|² over a ≠ 0 = {mean_sq:.4}");

    let big = PrimeModulus::new(1_000_000_007)?;
    let (a, mag) = sampled_max_linear(&Interval::initial(500)?, big, 2000, 7)?;
    println!("p = {big}, 2000 sampled a: best a = {a}, |S| = {mag:.4}");
    Ok(())
}

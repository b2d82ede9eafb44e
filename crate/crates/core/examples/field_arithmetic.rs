//! Prime-field basics: batch inversion, rational reconstruction, smooth
//! numbers and primes in progressions.

use kloosterman_lab::modmath::{
    batch_inverse, prime_count_ap, rational_reconstruct, smooth_count, Interval, PrimeModulus,
};

fn main() -> kloosterman_lab::Result<()> {
    let p = PrimeModulus::new(1_000_003)?;
    let interval = Interval::new(500, 8)?;
    let xs: Vec<u64> = interval.residues(p).collect();
    let inv = batch_inverse(&xs, p)?;
    for (x, y) in xs.iter().zip(&inv) {
        println!("{x}⁻¹ = {y}  (check {})", p.mul(*x, *y));
    }

    // 3/7 survives the round trip as long as both parts are below √(p/2)
    let j = p.mul(3, p.inv(7)?);
    let r = rational_reconstruct(j, p);
    println!("3/7 mod p = {j}, reconstructed as {}/{}", r.numer(), r.denom());

    println!("Ψ(10^6, 100) = {}", smooth_count(1_000_000, 100)?);
    println!("π(10^6; 7, 3) = {}", prime_count_ap(1_000_000, 7, 3)?);
    Ok(())
}

//! Energies J₂ₖ of an inverse interval against the exponent 2k²/(k+1), and
//! the sumset size they bound from below.

use kloosterman_lab::counting::{count_j2k, count_j2k_prime, sumset_size, Backend};
use kloosterman_lab::{Interval, PrimeModulus};

fn main() -> kloosterman_lab::Result<()> {
    let p = PrimeModulus::new(10_007)?;
    println!("{:>4} {:>2} {:>14} {:>9} {:>9}", "N", "k", "J", "measured", "bound");
    for k in [2u32, 3] {
        for n in [8u64, 16, 32] {
            let r = count_j2k(&Interval::initial(n)?, k, p, Backend::Auto)?;
            println!(
                "{n:>4} {k:>2} {:>14} {:>9.4} {:>9.4}",
                r.count,
                r.measured_exponent,
                r.predicted_exponent_f64()
            );
        }
    }

    let i = Interval::initial(32)?;
    let j = count_j2k(&i, 2, p, Backend::Sparse)?.count;
    println!("|2(I⁻¹)| = {} for N = 32 (J₄ = {j})", sumset_size(&i, 2, p, Backend::Auto)?);

    // over primes only, J₂ₖ collapses to the diagonal once N^{2k-1} < p
    let r = count_j2k_prime(20, 2, PrimeModulus::new(1_000_003)?, Backend::Auto)?;
    println!("primes ≤ 20, k = 2: J = {}, exponent {:.4}", r.count, r.measured_exponent);
    Ok(())
}

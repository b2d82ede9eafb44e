//! Box point counts and successive minima of congruence lattices.

use kloosterman_lab::lattice::{
    box_points, minima_with_witnesses, minkowski_check, theorem5_lattice, LatticeBox, LatticeSpec,
};
use kloosterman_lab::PrimeModulus;

fn main() -> kloosterman_lab::Result<()> {
    let p = PrimeModulus::new(10_007)?;
    let l = LatticeSpec::gamma(1234, p);
    let d = LatticeBox::from_ints(&[150, 150])?;
    let (count, _) = box_points(&l, &d)?;
    let rep = minima_with_witnesses(&l, &d)?;
    println!("{l} in box (150, 150): {count} points");
    for (m, w) in rep.minima.iter().zip(&rep.witnesses) {
        println!("  minimum {m}  witness {w:?}");
    }

    let check = minkowski_check(&l, &d)?;
    println!("count ≤ Π(2j/μ_j + 1): {} ≤ {}  ({})", check.count, check.lemma_rhs, check.lemma_holds);

    let planar = LatticeSpec::planar3(17, 4000, p);
    let check = minkowski_check(&planar, &LatticeBox::from_ints(&[30, 60, 900])?)?;
    println!("{planar}: {} points, minima product {}", check.count, check.corollary_lhs);

    let t = theorem5_lattice(1234, 20, 2, p)?;
    println!("λ = 1234, N = 20, k = 2: μ₂ ≤ 1 is {}", t.in_omega_prime);
    Ok(())
}

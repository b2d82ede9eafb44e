//! Solution polynomials, Sylvester resultants and the cubic identity.

use num_rational::Ratio;

use kloosterman_lab::polyalg::{
    build_solution_poly, hyperbola_divisor_solutions, identity_sides, ratio, resultant_bound_check,
    sylvester_resultant,
};

fn main() -> kloosterman_lab::Result<()> {
    let px = build_solution_poly(&[1, 2, 3, 4])?;
    let py = build_solution_poly(&[2, 5, 1, 7])?;
    println!("P_x = {px}\nP_y = {py}");
    println!("Res(P_x, P_y) = {}", sylvester_resultant(&px, &py)?);

    let one = Ratio::from_integer(1);
    let r = resultant_bound_check(&px, &py, 7, one, one, 1 << 20)?;
    println!("|Res| / N^{} = {:.3e}", r.exponent, r.ratio);

    // x, y, z = 1, 2, 3 satisfy xyz = a₁e₁ + b₁ and e₂ = a₂e₁ + b₂ with a = (1, 1), b = (0, 5)
    let (lhs, rhs) = identity_sides(&ratio(1, 1), &ratio(2, 1), &ratio(3, 1), &ratio(1, 1), &ratio(1, 1), &ratio(0, 1), &ratio(5, 1))?;
    println!("cubic identity: {lhs} = {rhs}");

    println!("3xy + 5x + 5y = 0, |x|,|y| ≤ 50: {:?}", hyperbola_divisor_solutions(3, 5, 50)?);
    Ok(())
}

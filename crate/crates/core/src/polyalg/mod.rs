//! Exact integer polynomial algebra: Sylvester resultants, the solution
//! polynomials of symmetric reciprocal equations, and two algebraic
//! identities used when counting solutions. No floating point is involved
//! except in the reported ratios of [`ResultantBoundReport`].

mod identities;
mod poly;
mod resultant;

pub use identities::{hyperbola_divisor_solutions, identity_check, identity_sides, ratio};
pub use poly::IntPoly;
pub use resultant::{
    bareiss_determinant, build_solution_poly, resultant_bound_check, sylvester_matrix,
    sylvester_resultant, ResultantBoundReport,
};

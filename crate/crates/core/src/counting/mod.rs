//! Exact solution counting for the congruences and Diophantine equations in
//! reciprocals whose sizes govern the Kloosterman sum estimates.
//!
//! Every count is over ordered tuples. Counts are exact integers; floating
//! point only appears in the measured exponents of [`CountReport`].

mod congruences;
mod distribution;
mod energy;
mod rational;

pub use congruences::{
    hyperbola_count, inverse_pair_count, inverse_pair_count_direct, mult_energy,
    triple_product_count,
};
pub use distribution::{sum_distribution, Backend, ResidueDistribution, DENSE_MAX_P, SPARSE_MAX_WORK};
pub use energy::{
    count_j2k, count_j2k_prime, general_exponent, inverse_sum_distribution, log_ratio,
    sumset_size, ternary_count, CountReport,
};
pub(crate) use energy::ln_big;
pub use rational::{
    dioph_3i_count, rational_j2k, rational_shifted_count, weighted_solution_count,
    RATIONAL_MAX_TUPLES,
};

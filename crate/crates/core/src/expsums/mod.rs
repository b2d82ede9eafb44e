//! Exponential sums over prime fields and their Archimedean analogue.

mod accum;
mod archimedean;
mod scan;
mod sums;

pub use accum::{e_p, CompensatedSum};
pub use archimedean::{archimedean_bilinear, archimedean_gamma, choose_archimedean_k};
pub use scan::{
    linear_spectrum, max_linear_over_a, sampled_max, sampled_max_linear, stratified_sample,
    DENSE_SCAN_MAX_P,
};
pub use sums::{
    bilinear, complete_kloosterman, linear_incomplete, multilinear, multilinear_with_budget,
    prime_sum_power_r, CoeffSeq, ComplexSum, MULTILINEAR_MAX_TERMS,
};

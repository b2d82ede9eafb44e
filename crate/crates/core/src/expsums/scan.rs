//! Scans of `|Σ e_p(a x*)|` over the coefficient `a`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::modmath::{Interval, PrimeModulus};

/// Largest modulus handled by the full DFT scan.
pub const DENSE_SCAN_MAX_P: u64 = 1 << 24;

/// Magnitudes below this gap are treated as ties.
const TIE_TOL: f64 = 1e-9;

/// `S(a) = Σ_{x∈I} e_p(a x*)` for every `a` in `0..p`, as one length-`p` DFT
/// of the indicator of `I*`.
pub fn linear_spectrum(interval: &Interval, p: PrimeModulus) -> Result<Vec<Complex64>> {
    let m = p.get();
    if m > DENSE_SCAN_MAX_P {
        return Err(Error::resource(format!(
            "p = {m} exceeds the dense scan limit 2^24; use the sampled scan"
        )));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); m as usize];
    for y in interval.inverses(p)? {
        buf[y as usize].re += 1.0;
    }
    // the inverse transform carries the +2πi sign of e_p
    FftPlanner::<f64>::new()
        .plan_fft_inverse(m as usize)
        .process(&mut buf);
    Ok(buf)
}

/// Picks the largest magnitude, preferring the earliest index among ties.
fn argmax_with_ties(values: impl Iterator<Item = (u64, f64)>) -> Option<(u64, f64)> {
    let mut best: Option<(u64, f64)> = None;
    for (a, m) in values {
        match best {
            Some((_, bm)) if m <= bm + TIE_TOL => {}
            _ => best = Some((a, m)),
        }
    }
    best
}

/// `max_{1≤a<p} |Σ_{x∈I} e_p(a x*)|` and the smallest maximizing `a`.
pub fn max_linear_over_a(interval: &Interval, p: PrimeModulus) -> Result<(u64, f64)> {
    let spec = linear_spectrum(interval, p)?;
    let (a, m) = argmax_with_ties(spec.iter().enumerate().skip(1).map(|(a, z)| (a as u64, z.norm())))
        .expect("p >= 3 leaves a nonzero frequency");
    Ok((a, m))
}

/// `samples` coefficients drawn one per stratum of `[1, p−1]`.
pub fn stratified_sample(p: PrimeModulus, samples: u64, seed: u64) -> Vec<u64> {
    let span = p.get() - 1;
    let samples = samples.clamp(1, span);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|i| {
            let lo = (i as u128 * span as u128 / samples as u128) as u64;
            let hi = ((i + 1) as u128 * span as u128 / samples as u128) as u64;
            1 + rng.gen_range(lo..hi)
        })
        .collect()
}

/// Maximum of `f(a)` over a stratified sample of `a`; ties go to the smallest `a`.
pub fn sampled_max<F>(p: PrimeModulus, samples: u64, seed: u64, f: F) -> Result<(u64, f64)>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    let mut values = stratified_sample(p, samples, seed)
        .into_par_iter()
        .map(|a| f(a).map(|m| (a, m)))
        .collect::<Result<Vec<_>>>()?;
    values.sort_by_key(|&(a, _)| a);
    Ok(argmax_with_ties(values.into_iter()).expect("sample is nonempty"))
}

/// Sampled version of [`max_linear_over_a`] for moduli beyond the dense limit.
pub fn sampled_max_linear(
    interval: &Interval,
    p: PrimeModulus,
    samples: u64,
    seed: u64,
) -> Result<(u64, f64)> {
    let inv = interval.inverses(p)?;
    sampled_max(p, samples, seed, |a| {
        Ok(inv
            .iter()
            .map(|&y| super::e_p(p.mul(a, y), p.get()))
            .collect::<super::CompensatedSum>()
            .value()
            .norm())
    })
}

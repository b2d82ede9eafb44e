use std::f64::consts::TAU;

use num_complex::Complex64;

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: f64,
    im: f64,
    re_err: f64,
    im_err: f64,
}

#[inline]
fn two_sum(acc: &mut f64, err: &mut f64, x: f64) {
    let t = *acc + x;
    if acc.abs() >= x.abs() {
        *err += (*acc - t) + x;
    } else {
        *err += (x - t) + *acc;
    }
    *acc = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        two_sum(&mut self.re, &mut self.re_err, z.re);
        two_sum(&mut self.im, &mut self.im_err, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_err, self.im + self.im_err)
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for z in iter {
            s.add(z);
        }
        s
    }
}

/// `e_p(z) = exp(2πi z / p)` for a residue `0 <= z < p`.
#[inline]
pub fn e_p(z: u64, p: u64) -> Complex64 {
    // centre the residue so the angle stays in (-π, π]
    let t = if z > p / 2 {
        -((p - z) as f64) / p as f64
    } else {
        z as f64 / p as f64
    };
    let (s, c) = (TAU * t).sin_cos();
    Complex64::new(c, s)
}

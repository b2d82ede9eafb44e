use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{LatticeBox, LatticeSpec};
use crate::error::{Error, Result};
use crate::modmath::mod_inverse;

/// Cap on the expected number of points, `Π(2Bᵢ+1)/p`.
pub const BOX_MAX_EXPECTED_POINTS: f64 = 1e7;
/// Cap on the number of free-coordinate tuples scanned.
pub const BOX_MAX_WORK: u128 = 1 << 30;

/// All lattice points of `Γ` inside `D`, in lexicographic order of the
/// non-pivot coordinates. The origin is included.
pub fn box_points(lattice: &LatticeSpec, body: &LatticeBox) -> Result<(u64, Vec<Vec<i64>>)> {
    body.check_dim(lattice)?;
    let p = lattice.modulus();
    let m = p.get() as i128;
    let b: Vec<i64> = body
        .bounds()
        .iter()
        .map(|q| q.floor().to_integer().to_i64())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::resource("box bound exceeds 64 bits"))?;
    let sides: Vec<u128> = b.iter().map(|&bi| 2 * bi as u128 + 1).collect();
    let expected = sides.iter().map(|&s| s as f64).product::<f64>() / p.get() as f64;
    if expected > BOX_MAX_EXPECTED_POINTS {
        return Err(Error::resource(format!(
            "about {expected:.3e} expected points exceeds the enumeration budget"
        )));
    }
    let coeffs = lattice.coeffs();
    // solve for the unit coordinate with the widest range
    let pivot = (0..coeffs.len())
        .filter(|&j| coeffs[j] != 0)
        .max_by_key(|&j| (b[j], j))
        .expect("some coefficient is nonzero");
    let free: Vec<usize> = (0..coeffs.len()).filter(|&j| j != pivot).collect();
    let work: u128 = free.iter().map(|&j| sides[j]).product();
    if work > BOX_MAX_WORK {
        return Err(Error::resource(format!(
            "{work} free-coordinate tuples exceed the enumeration budget"
        )));
    }
    let neg_inv = p.neg(mod_inverse(coeffs[pivot], p)?) as i128;
    let bp = b[pivot] as i128;

    let lead = free[0];
    let rows: Vec<Vec<Vec<i64>>> = (-b[lead]..=b[lead])
        .into_par_iter()
        .map(|x0| {
            let mut out = Vec::new();
            let mut x = vec![0i64; coeffs.len()];
            x[lead] = x0;
            let fill = |x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>| {
                let s: i128 = free
                    .iter()
                    .map(|&j| coeffs[j] as i128 * x[j] as i128)
                    .sum::<i128>()
                    .mod_floor(&m);
                let r = (s * neg_inv).mod_floor(&m);
                let mut v = -bp + (r + bp).mod_floor(&m);
                while v <= bp {
                    x[pivot] = v as i64;
                    out.push(x.clone());
                    v += m;
                }
            };
            if let Some(&second) = free.get(1) {
                for x1 in -b[second]..=b[second] {
                    x[second] = x1;
                    fill(&mut x, &mut out);
                }
            } else {
                fill(&mut x, &mut out);
            }
            out
        })
        .collect();
    let points: Vec<Vec<i64>> = rows.into_iter().flatten().collect();
    Ok((points.len() as u64, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::PrimeModulus;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        v.sort();
        v
    }

    #[test]
    fn examples() {
        let (c, pts) =
            box_points(&LatticeSpec::gamma(1, p(5)), &LatticeBox::from_ints(&[1, 1]).unwrap()).unwrap();
        assert_eq!(c, 3);
        assert_eq!(sorted(pts), vec![vec![-1, -1], vec![0, 0], vec![1, 1]]);
        let (c, _) =
            box_points(&LatticeSpec::gamma(4, p(5)), &LatticeBox::from_ints(&[0, 0]).unwrap()).unwrap();
        assert_eq!(c, 1);
        let (c, pts) =
            box_points(&LatticeSpec::gamma(2, p(7)), &LatticeBox::from_ints(&[1, 2]).unwrap()).unwrap();
        assert_eq!(c, 3);
        assert_eq!(sorted(pts), vec![vec![-1, -2], vec![0, 0], vec![1, 2]]);
    }

    #[test]
    fn matches_exhaustive_3d() {
        let l = LatticeSpec::planar3(3, 5, p(11));
        let d = LatticeBox::from_ints(&[2, 4, 13]).unwrap();
        let (c, pts) = box_points(&l, &d).unwrap();
        let mut naive = Vec::new();
        for u in -2..=2 {
            for v in -4..=4 {
                for w in -13..=13 {
                    if l.contains(&[u, v, w]) {
                        naive.push(vec![u, v, w]);
                    }
                }
            }
        }
        assert_eq!(c as usize, naive.len());
        assert_eq!(sorted(pts), naive);
    }

    #[test]
    fn budget() {
        let d = LatticeBox::from_ints(&[1 << 40, 1 << 40]).unwrap();
        assert!(matches!(
            box_points(&LatticeSpec::gamma(3, p(7)), &d),
            Err(Error::Resource(_))
        ));
    }
}

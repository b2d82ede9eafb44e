use std::fmt;
use std::str::FromStr;

use super::{batch_inverse, PrimeModulus};
use crate::error::{Error, Result};

/// The residue interval `{a+1, ..., a+N}`, reduced mod `p` when used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    offset: u64,
    len: u64,
}

impl Interval {
    pub fn new(offset: u64, len: u64) -> Result<Self> {
        if len == 0 {
            return Err(Error::domain("interval length must be at least 1"));
        }
        Ok(Interval { offset, len })
    }

    /// `[1, N]`.
    pub fn initial(len: u64) -> Result<Self> {
        Self::new(0, len)
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Elements `a+1, ..., a+N` reduced mod `p`, in order.
    pub fn residues(&self, p: PrimeModulus) -> impl Iterator<Item = u64> + '_ {
        let m = p.get();
        let start = self.offset % m;
        (1..=self.len).map(move |i| ((start as u128 + i as u128) % m as u128) as u64)
    }

    pub fn contains_zero(&self, p: PrimeModulus) -> bool {
        let m = p.get();
        let r = self.offset % m;
        let first_hit = if r == 0 { m } else { m - r };
        first_hit <= self.len
    }

    pub fn contains(&self, x: u64, p: PrimeModulus) -> bool {
        let m = p.get();
        if self.len >= m {
            return true;
        }
        let shifted = p.sub(x % m, p.add(self.offset % m, 1));
        shifted < self.len
    }

    pub fn ensure_invertible(&self, p: PrimeModulus) -> Result<()> {
        if self.contains_zero(p) {
            Err(Error::domain(format!(
                "interval {self} contains 0 mod {p}; inverses are undefined"
            )))
        } else {
            Ok(())
        }
    }

    /// Inverses of the interval's elements, aligned with [`Interval::residues`].
    pub fn inverses(&self, p: PrimeModulus) -> Result<Vec<u64>> {
        self.ensure_invertible(p)?;
        let xs: Vec<u64> = self.residues(p).collect();
        batch_inverse(&xs, p)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.offset, self.len)
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `a:N`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, n) = s
            .split_once(':')
            .ok_or_else(|| Error::config(format!("interval `{s}` is not of the form a:N")))?;
        let a = a
            .trim()
            .parse()
            .map_err(|_| Error::config(format!("bad interval offset `{a}`")))?;
        let n = n
            .trim()
            .parse()
            .map_err(|_| Error::config(format!("bad interval length `{n}`")))?;
        Interval::new(a, n).map_err(|e| Error::config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_detection() {
        let p = PrimeModulus::new(7).unwrap();
        assert!(!Interval::new(0, 6).unwrap().contains_zero(p));
        assert!(Interval::new(0, 7).unwrap().contains_zero(p));
        assert!(Interval::new(5, 2).unwrap().contains_zero(p));
        assert!(!Interval::new(5, 1).unwrap().contains_zero(p));
        assert!(Interval::new(6, 1).unwrap().contains_zero(p));
        assert!(!Interval::new(7, 6).unwrap().contains_zero(p));
    }

    #[test]
    fn membership_wraps() {
        let p = PrimeModulus::new(7).unwrap();
        let i = Interval::new(5, 3).unwrap(); // {6, 0, 1}
        let members: Vec<u64> = (0..7).filter(|&x| i.contains(x, p)).collect();
        assert_eq!(members, vec![0, 1, 6]);
        assert_eq!(i.residues(p).collect::<Vec<_>>(), vec![6, 0, 1]);
    }

    #[test]
    fn parse_round_trip() {
        let i: Interval = "3:10".parse().unwrap();
        assert_eq!(i, Interval::new(3, 10).unwrap());
        assert_eq!(i.to_string(), "3:10");
        assert!("3".parse::<Interval>().is_err());
        assert!("3:0".parse::<Interval>().is_err());
    }
}

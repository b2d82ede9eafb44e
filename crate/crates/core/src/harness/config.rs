use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::counting::Backend;
use crate::error::{Error, Result};
use crate::modmath::{Interval, PrimeModulus};

/// The results a sweep can be run against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T8,
    T9,
    T10,
    T11,
    T12,
    T13,
    T14,
    T15,
    T17,
    BT,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T8,
        TheoremId::T9,
        TheoremId::T10,
        TheoremId::T11,
        TheoremId::T12,
        TheoremId::T13,
        TheoremId::T14,
        TheoremId::T15,
        TheoremId::T17,
        TheoremId::BT,
    ];

    pub fn uses_k(self) -> bool {
        matches!(self, TheoremId::T1 | TheoremId::T4 | TheoremId::T5 | TheoremId::T6 | TheoremId::T11)
    }

    pub fn uses_n(self) -> bool {
        matches!(self, TheoremId::T12 | TheoremId::T13 | TheoremId::T14)
    }

    pub fn uses_offsets(self) -> bool {
        !matches!(
            self,
            TheoremId::T5 | TheoremId::T6 | TheoremId::T9 | TheoremId::T15 | TheoremId::T17 | TheoremId::BT
        )
    }

    pub fn uses_primes(self) -> bool {
        !matches!(self, TheoremId::T15 | TheoremId::BT)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::config(format!("unknown theorem id '{s}'")))
    }
}

/// Parameters of one sweep; the grid is the product of the lists the chosen
/// theorem uses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub theorem: TheoremId,
    pub primes: Vec<u64>,
    pub lengths: Vec<u64>,
    pub ks: Vec<u32>,
    pub ns: Vec<u32>,
    pub offsets: Vec<u64>,
    /// ξ values for the Archimedean sum.
    pub xis: Vec<f64>,
    /// θ values for the Brun–Titchmarsh table.
    pub thetas: Vec<f64>,
    pub backend: Backend,
    pub seed: u64,
    /// Number of coefficients `a` (or residues λ) sampled per grid point.
    pub samples: u64,
    /// Allowed excess of the measured over the predicted exponent.
    pub slack: f64,
    /// Record wall time; when false every `seconds` field is 0.
    pub timings: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            theorem: TheoremId::T1,
            primes: Vec::new(),
            lengths: Vec::new(),
            ks: Vec::new(),
            ns: Vec::new(),
            offsets: vec![0],
            xis: Vec::new(),
            thetas: Vec::new(),
            backend: Backend::Auto,
            seed: 0,
            samples: 100,
            slack: 0.4,
            timings: true,
        }
    }
}

/// One point of the expanded grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct GridPoint {
    pub index: usize,
    pub p: u64,
    pub len: u64,
    pub k: u32,
    pub n: u32,
    pub offset: u64,
    pub param: f64,
}

impl SweepConfig {
    pub fn new(theorem: TheoremId) -> Self {
        SweepConfig { theorem, ..SweepConfig::default() }
    }

    fn require<T>(&self, list: &[T], name: &str) -> Result<()> {
        if list.is_empty() {
            return Err(Error::config(format!("{} needs a nonempty list of {name}", self.theorem)));
        }
        Ok(())
    }

    /// Checks the configuration without doing any work.
    pub fn validate(&self) -> Result<()> {
        let t = self.theorem;
        self.require(&self.lengths, if t == TheoremId::BT { "x values" } else { "lengths N" })?;
        if self.lengths.contains(&0) {
            return Err(Error::config("lengths must be positive"));
        }
        if !(self.slack.is_finite() && self.slack >= 0.0) {
            return Err(Error::config("slack must be a nonnegative number"));
        }
        if self.samples == 0 {
            return Err(Error::config("samples must be positive"));
        }
        if t.uses_k() {
            self.require(&self.ks, "k values")?;
            if self.ks.contains(&0) {
                return Err(Error::config("k must be at least 1"));
            }
        }
        if t.uses_n() {
            self.require(&self.ns, "n values")?;
            if self.ns.contains(&0) {
                return Err(Error::config("n must be at least 1"));
            }
        }
        if t.uses_offsets() {
            self.require(&self.offsets, "offsets")?;
        }
        match t {
            TheoremId::T15 => {
                self.require(&self.xis, "ξ values")?;
                if self.xis.iter().any(|x| !x.is_finite() || *x == 0.0) {
                    return Err(Error::config("ξ values must be finite and nonzero"));
                }
            }
            TheoremId::BT => {
                self.require(&self.thetas, "θ values")?;
                if self.thetas.iter().any(|th| !(*th > 0.0 && *th < 1.0)) {
                    return Err(Error::config("θ values must lie in (0, 1)"));
                }
            }
            _ => {}
        }
        if t.uses_primes() {
            self.require(&self.primes, "primes")?;
            for &p in &self.primes {
                let pm = PrimeModulus::new(p).map_err(|e| Error::config(e.to_string()))?;
                for &len in &self.lengths {
                    if len >= p {
                        return Err(Error::config(format!("N = {len} must be below p = {p}")));
                    }
                    let offsets: &[u64] = if t.uses_offsets() { &self.offsets } else { &[0] };
                    for &a in offsets {
                        let iv = Interval::new(a % p, len).map_err(|e| Error::config(e.to_string()))?;
                        if iv.contains_zero(pm) {
                            return Err(Error::config(format!(
                                "interval {iv} contains 0 mod {p}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Expands the grid in a fixed order: p, N, k, n, offset, extra parameter.
    pub(crate) fn grid(&self) -> Vec<GridPoint> {
        let t = self.theorem;
        let primes = if t.uses_primes() { self.primes.clone() } else { vec![0] };
        let ks = if t.uses_k() { self.ks.clone() } else { vec![0] };
        let ns = if t.uses_n() { self.ns.clone() } else { vec![0] };
        let offsets = if t.uses_offsets() { self.offsets.clone() } else { vec![0] };
        let params = match t {
            TheoremId::T15 => self.xis.clone(),
            TheoremId::BT => self.thetas.clone(),
            _ => vec![0.0],
        };
        let mut out = Vec::new();
        for &p in &primes {
            for &len in &self.lengths {
                for &k in &ks {
                    for &n in &ns {
                        for &offset in &offsets {
                            for &param in &params {
                                out.push(GridPoint {
                                    index: out.len(),
                                    p,
                                    len,
                                    k,
                                    n,
                                    offset: if p > 0 { offset % p } else { offset },
                                    param,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.to_string().parse::<TheoremId>().unwrap(), t);
        }
        assert!("T7".parse::<TheoremId>().is_err());
    }

    #[test]
    fn validation() {
        let mut c = SweepConfig::new(TheoremId::T1);
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        c.primes = vec![10007];
        c.lengths = vec![50, 100];
        c.ks = vec![2];
        c.validate().unwrap();
        assert_eq!(c.grid().len(), 2);
        c.primes = vec![10006];
        assert!(c.validate().is_err());
        c.primes = vec![101];
        c.offsets = vec![95];
        assert!(c.validate().is_err());
    }
}

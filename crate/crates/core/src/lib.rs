//! Exact arithmetic toolkit for reciprocal sumsets of intervals in prime
//! fields and the (multi)linear Kloosterman sums built on them.
//!
//! The crate is organised bottom-up:
//!
//! - [`modmath`]: prime-field arithmetic, batch inversion, rational
//!   reconstruction, sieves and the smooth-number counter Ψ(x, y).
//! - [`counting`]: exact solution counts for congruences and Diophantine
//!   equations in inverses (energies J₂ₖ, sumset sizes, hyperbola counts,
//!   rational analogues over ℚ).
//! - [`expsums`]: complex evaluation of incomplete, bilinear, multilinear and
//!   complete Kloosterman sums, the full DFT scan over the coefficient `a`, and
//!   the Archimedean bilinear sum.
//! - [`lattice`]: congruence lattices in dimension 2 and 3, box point counts
//!   and exact successive minima.
//! - [`polyalg`]: big-integer polynomials, Sylvester resultants and the
//!   algebraic identities used by the counting arguments.
//! - [`harness`]: parameter sweeps, invariant suites and CSV/JSON records,
//!   driven by the `klab` binary.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod counting;
pub mod error;
pub mod expsums;
pub mod harness;
pub mod lattice;
pub mod modmath;
pub mod polyalg;

pub use error::{Error, Result};
pub use modmath::{Interval, PrimeModulus, RationalPair};

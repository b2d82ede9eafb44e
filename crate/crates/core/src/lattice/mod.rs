//! Congruence lattices in dimensions 2 and 3, box point counts and
//! successive minima.

mod checks;
mod minima;
mod points;
mod spec;

pub use checks::{
    minkowski_check, planar3_lattice, theorem5_lattice, theorem5_witness, MinkowskiReport,
    Theorem5Lattice,
};
pub use minima::{minima_with_witnesses, successive_minima, MinimaReport, MINIMA_MAX_NODES};
pub use points::{box_points, BOX_MAX_EXPECTED_POINTS, BOX_MAX_WORK};
pub use spec::{LatticeBox, LatticeSpec, Minimum};

//! Numerical experiments on the triangle inequality: qubit lattice scans,
//! random minimal-gap sweeps, and gap surfaces over two-parameter families.
//!
//! Every protocol is a pure function of its spec, seed and solver config.
//! Independent work items run on the rayon pool and are collected in index
//! order, so outputs do not depend on the number of workers.

mod lattice;
mod output;
mod surface;
mod sweep;

pub use lattice::{lattice_draws, lattice_scan, LatticeDraw, LatticePoint, LatticeScan, LatticeSpec};
pub use output::{write_gap_csv, write_lattice_csv, write_surface_csv, write_surface_svg};
pub use surface::{gap_surface, Scenario, SurfacePoint, SurfaceResult, SurfaceSpec};
pub use sweep::{min_gap_sweep, Anchor, SweepResult, SweepSpec};

use crate::divergence::GapRecord;

/// Smallest gap among the records, `+∞` when there are none.
pub fn min_gap<'a>(records: impl IntoIterator<Item = &'a GapRecord>) -> f64 {
    records.into_iter().map(|r| r.gap).fold(f64::INFINITY, f64::min)
}

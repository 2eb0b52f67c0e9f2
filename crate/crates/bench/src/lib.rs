//! Shared fixtures for the benchmarks.

use qwass_core::random::{random_observable_set, random_state, RngStream};
use qwass_core::{DensityMatrix, ObservableSet, Result};

/// Full-rank Wishart pair with three random observables.
pub fn instance(dim: usize, seed: u64) -> Result<(DensityMatrix, DensityMatrix, ObservableSet)> {
    let mut rng = RngStream::new(seed, 0).rng();
    let rho = random_state(dim, dim, &mut rng)?;
    let omega = random_state(dim, dim, &mut rng)?;
    let a = random_observable_set(dim, 3, &mut rng)?;
    Ok((rho, omega, a))
}

//! Seeded sampling of states and observables.
//!
//! Every experiment sample draws from its own `(seed, stream)` pair of a
//! ChaCha8 generator, so samples can be evaluated in any order (or in
//! parallel) and still reproduce bit for bit.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DensityMatrix, HermitianMatrix, ObservableSet};

/// Identifies a reproducible random substream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// A fresh generator positioned at the start of this substream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Complex Gaussian with independent standard normal real and imaginary parts
/// (variance one each, not one half).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// `rows×cols` matrix of i.i.d. complex Gaussians, filled row by row.
pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let data: Vec<Complex64> = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    DMatrix::from_row_slice(rows, cols, &data)
}

/// Normalized Wishart state `X X† / tr(X X†)` with `X` a `dim×rank` Gaussian matrix.
pub fn random_state<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    if dim == 0 {
        return Err(Error::EmptyMatrix);
    }
    if rank == 0 || rank > dim {
        return Err(Error::InvalidRank { rank, dim });
    }
    let x = gaussian_matrix(dim, rank, rng);
    DensityMatrix::normalized(HermitianMatrix::hermitian_part(&x * x.adjoint()))
}

/// `Y + Y†` with `Y` a `dim×dim` Gaussian matrix.
pub fn random_observable<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<HermitianMatrix> {
    if dim == 0 {
        return Err(Error::EmptyMatrix);
    }
    let y = gaussian_matrix(dim, dim, rng);
    HermitianMatrix::new(&y + y.adjoint())
}

/// `count` independent random observables.
pub fn random_observable_set<R: Rng + ?Sized>(dim: usize, count: usize, rng: &mut R) -> Result<ObservableSet> {
    let observables = (0..count)
        .map(|_| random_observable(dim, rng))
        .collect::<Result<Vec<_>>>()?;
    ObservableSet::new(observables)
}

/// Uniform point in the closed unit ball of `R^3`: uniform direction, radius
/// the cube root of a uniform draw.
pub fn uniform_ball_point<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 0.0 {
            let u: f64 = rng.random();
            let r = u.cbrt() / norm;
            return [v[0] * r, v[1] * r, v[2] * r];
        }
    }
}

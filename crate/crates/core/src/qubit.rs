//! Closed forms for qubits under the symmetric cost built from all three
//! Pauli matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{pauli, DensityMatrix, HermitianMatrix};
use crate::transport::Certificates;

/// Slack on the unit-ball constraint.
pub const BALL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn new(b: [f64; 3]) -> Result<Self> {
        let v = Self(b);
        if !(v.norm() <= 1.0 + BALL_TOL) {
            return Err(Error::OutsideBall(v.norm()));
        }
        Ok(v)
    }

    pub fn zero() -> Self {
        Self([0.0; 3])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

fn require_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 2 {
        return Err(Error::WrongDimension(rho.dim()));
    }
    Ok(())
}

/// `b_j = tr(ρ σ_j)`.
pub fn to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    require_qubit(rho)?;
    Ok(BlochVector([1, 2, 3].map(|j| rho.expectation(&pauli(j)))))
}

/// `½(I + b·σ)`.
pub fn from_bloch(b: &BlochVector) -> Result<DensityMatrix> {
    BlochVector::new(b.0)?;
    let mut m = HermitianMatrix::identity(2);
    for (j, bj) in b.0.iter().enumerate() {
        m = m.add(&pauli(j + 1).scale(*bj))?;
    }
    DensityMatrix::new(m.scale(0.5))
}

/// `4 |b_ρ − b_ω|`, a lower bound on the symmetric-cost transport value.
pub fn bloch_lower_bound(rho: &DensityMatrix, omega: &DensityMatrix) -> Result<f64> {
    Ok(4.0 * to_bloch(rho)?.distance(&to_bloch(omega)?))
}

/// Dual certificate attaining [`bloch_lower_bound`]: `Y = −X = 4 n·σ` with
/// `n` the unit vector along `b_ω − b_ρ`. Feasible because the linear part
/// `Y ⊗ I − I ⊗ Yᵀ` is dominated by the cost whenever `‖Y‖ ≤ 4`.
pub fn lower_bound_certificate(rho: &DensityMatrix, omega: &DensityMatrix) -> Result<Certificates> {
    let br = to_bloch(rho)?;
    let bw = to_bloch(omega)?;
    let dist = br.distance(&bw);
    let mut y = HermitianMatrix::zeros(2);
    if dist > 0.0 {
        for j in 0..3 {
            y = y.add(&pauli(j + 1).scale(4.0 * (bw.0[j] - br.0[j]) / dist))?;
        }
    }
    Ok(Certificates { x: y.scale(-1.0), y })
}

/// `1 − √(1 − |b|²)`, with the radicand clamped at zero.
fn purity_defect(b: &BlochVector) -> f64 {
    1.0 - (1.0 - b.dot(b)).max(0.0).sqrt()
}

/// `4(1 − √(1 − |b_ρ|²))`.
pub fn symmetric_self_distance_sq(rho: &DensityMatrix) -> Result<f64> {
    Ok(4.0 * purity_defect(&to_bloch(rho)?))
}

/// Sufficient condition on three Bloch vectors for the triangle inequality
/// `d(ρ,τ) ≤ d(ρ,ω) + d(ω,τ)` under the symmetric cost.
///
/// Compares the upper bound `6 − 2 b_ρ·b_τ` on `D²(ρ,τ)` against the lower
/// bounds `4|Δb|` on the two other legs, after subtracting self-distances.
pub fn sufficient_triangle_condition(b_rho: &BlochVector, b_omega: &BlochVector, b_tau: &BlochVector) -> bool {
    let s_rho = purity_defect(b_rho);
    let s_omega = purity_defect(b_omega);
    let s_tau = purity_defect(b_tau);
    let l_ro = 4.0 * b_rho.distance(b_omega);
    let l_ot = 4.0 * b_omega.distance(b_tau);
    let lhs = 6.0 - 2.0 * b_rho.dot(b_tau) - l_ro - l_ot + 4.0 * s_omega;
    let left = (l_ro - 2.0 * s_rho - 2.0 * s_omega).max(0.0).sqrt();
    let right = (l_ot - 2.0 * s_omega - 2.0 * s_tau).max(0.0).sqrt();
    lhs <= 2.0 * left * right
}

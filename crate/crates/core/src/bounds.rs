//! Hellinger-type lower bound for nonnegative observables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_same_dim, DensityMatrix, ObservableSet, PSD_TOL};

/// Second moments `α = tr(Σ A_j² ω)` and `β = tr(Σ A_j² ρ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HellingerBoundInput {
    pub alpha: f64,
    pub beta: f64,
}

impl HellingerBoundInput {
    pub fn new(rho: &DensityMatrix, omega: &DensityMatrix, a: &ObservableSet) -> Result<Self> {
        check_same_dim(a.dim(), rho.dim())?;
        check_same_dim(a.dim(), omega.dim())?;
        let sq = a.sum_of_squares();
        let clamp = |v: f64| if v >= -PSD_TOL { v.max(0.0) } else { v };
        Ok(Self {
            alpha: clamp(omega.expectation(&sq)),
            beta: clamp(rho.expectation(&sq)),
        })
    }

    /// `2((α + β)/2 − √(αβ)) = (√α − √β)²`.
    pub fn bound(&self) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        if a == 0.0 || b == 0.0 {
            return a + b;
        }
        (a + b - 2.0 * (a * b).sqrt()).max(0.0)
    }

    /// Value of the tangent-line bound `(1 − √s)(α − β/√s)` at `s > 0`;
    /// its maximum over `s` is [`Self::bound`], attained at `s = β/α`.
    pub fn tangent(&self, s: f64) -> f64 {
        let r = s.sqrt();
        (1.0 - r) * (self.alpha - self.beta / r)
    }
}

/// Lower bound on `tr(Π C)` over all couplings, valid when every `A_j ⪰ 0`.
pub fn hellinger_lower_bound(rho: &DensityMatrix, omega: &DensityMatrix, a: &ObservableSet) -> Result<f64> {
    for (index, aj) in a.iter().enumerate() {
        let min_eigenvalue = aj.min_eigenvalue();
        if min_eigenvalue < -PSD_TOL {
            return Err(Error::ObservableNotPsd { index, min_eigenvalue });
        }
    }
    Ok(HellingerBoundInput::new(rho, omega, a)?.bound())
}

/// `Σ_j tr(A_j ρ A_j)`.
pub fn energy(rho: &DensityMatrix, a: &ObservableSet) -> Result<f64> {
    check_same_dim(a.dim(), rho.dim())?;
    Ok(a.iter()
        .map(|aj| (aj.matrix() * rho.matrix() * aj.matrix()).trace().re)
        .sum())
}

//! Complex Hermitian semidefinite programs in standard form.
//!
//! ```text
//! minimize    Re tr(C X)
//! subject to  Re tr(A_i X) = b_i,   i = 1..m
//!             X ⪰ 0   (n×n Hermitian)
//! ```
//!
//! with dual
//!
//! ```text
//! maximize    bᵀ y
//! subject to  S = C − Σ_i y_i A_i ⪰ 0.
//! ```
//!
//! Constraint matrices are sparse; the transport problems only ever use
//! Kronecker products of basis elements with the identity.
//! [`InteriorPoint`] is the built-in backend. Any other cone solver can be
//! plugged in through [`SdpBackend`].

mod ipm;

pub use ipm::InteriorPoint;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// A Hermitian matrix stored as explicit `(row, col, value)` entries, both
/// triangles present.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseHermitian {
    n: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseHermitian {
    /// Collects the nonzero entries of a dense Hermitian matrix.
    pub fn from_dense(m: &CMatrix) -> Self {
        let n = m.nrows();
        let mut entries = Vec::new();
        for j in 0..n {
            for i in 0..n {
                let v = m[(i, j)];
                if v.re != 0.0 || v.im != 0.0 {
                    entries.push((i, j, v));
                }
            }
        }
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|(_, _, v)| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `Re tr(A X)`.
    pub fn inner(&self, x: &CMatrix) -> f64 {
        self.entries.iter().map(|&(p, q, a)| (a * x[(q, p)]).re).sum()
    }

    /// `target += scale · A`.
    pub fn add_scaled_to(&self, scale: f64, target: &mut CMatrix) {
        for &(p, q, a) in &self.entries {
            target[(p, q)] += a * scale;
        }
    }

    /// `G† A G` for an arbitrary square `G`.
    pub fn congruence(&self, g: &CMatrix) -> CMatrix {
        let n = g.ncols();
        let mut out = CMatrix::zeros(n, n);
        for &(p, q, a) in &self.entries {
            // out += conj(G[p, :])ᵀ · a · G[q, :]
            for s in 0..n {
                let right = a * g[(q, s)];
                if right.re == 0.0 && right.im == 0.0 {
                    continue;
                }
                let mut col = out.column_mut(s);
                for r in 0..n {
                    col[r] += g[(p, r)].conj() * right;
                }
            }
        }
        out
    }

    /// `W A W` for Hermitian `W`.
    pub fn sandwich(&self, w: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n, n);
        for &(p, q, a) in &self.entries {
            // out += (W[:, p] · a) ⊗ W[q, :]
            for s in 0..n {
                let right = a * w[(q, s)];
                if right.re == 0.0 && right.im == 0.0 {
                    continue;
                }
                let mut col = out.column_mut(s);
                for r in 0..n {
                    col[r] += w[(r, p)] * right;
                }
            }
        }
        out
    }
}

/// One semidefinite program in standard primal form.
#[derive(Clone, Debug)]
pub struct SdpProblem {
    pub cost: CMatrix,
    pub constraints: Vec<SparseHermitian>,
    pub rhs: Vec<f64>,
}

impl SdpProblem {
    pub fn new(cost: CMatrix, constraints: Vec<SparseHermitian>, rhs: Vec<f64>) -> Result<Self> {
        let n = cost.nrows();
        if cost.ncols() != n {
            return Err(Error::NotSquare(n, cost.ncols()));
        }
        if constraints.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: constraints.len(),
                found: rhs.len(),
            });
        }
        if let Some(bad) = constraints.iter().find(|a| a.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        Ok(Self {
            cost,
            constraints,
            rhs,
        })
    }

    pub fn dim(&self) -> usize {
        self.cost.nrows()
    }

    /// `(Re tr(A_i X))_i`.
    pub fn apply_constraints(&self, x: &CMatrix) -> Vec<f64> {
        self.constraints.iter().map(|a| a.inner(x)).collect()
    }

    /// `Σ_i y_i A_i`.
    pub fn adjoint_constraints(&self, y: &[f64]) -> CMatrix {
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for (a, &yi) in self.constraints.iter().zip(y) {
            a.add_scaled_to(yi, &mut out);
        }
        out
    }
}

/// Tolerances and iteration cap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SdpSettings {
    /// Relative duality gap `|pobj − dobj| / (1 + |pobj| + |dobj|)`.
    pub gap_tol: f64,
    /// Relative primal and dual residual norms.
    pub feas_tol: f64,
    pub max_iter: usize,
}

impl Default for SdpSettings {
    fn default() -> Self {
        Self {
            gap_tol: 1e-8,
            feas_tol: 1e-8,
            max_iter: 200,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdpStatus {
    Optimal,
    MaxIter,
    InfeasibleDetected,
}

/// Final iterate and diagnostics.
#[derive(Clone, Debug)]
pub struct SdpSolution {
    pub x: CMatrix,
    pub y: Vec<f64>,
    pub s: CMatrix,
    pub primal_objective: f64,
    pub dual_objective: f64,
    /// Relative primal residual `‖b − A(X)‖ / (1 + ‖b‖)`.
    pub primal_infeasibility: f64,
    /// Relative dual residual `‖C − A*(y) − S‖ / (1 + ‖C‖)`.
    pub dual_infeasibility: f64,
    pub iterations: usize,
    pub status: SdpStatus,
}

impl SdpSolution {
    pub fn relative_gap(&self) -> f64 {
        (self.primal_objective - self.dual_objective).abs()
            / (1.0 + self.primal_objective.abs() + self.dual_objective.abs())
    }
}

/// Seam for substituting an external cone solver.
pub trait SdpBackend: Sync {
    fn solve(&self, problem: &SdpProblem, settings: &SdpSettings) -> Result<SdpSolution>;
}

//! Quantum optimal transport: the coupling SDP, its dual, and the closed forms.
//!
//! Couplings live on `C^d ⊗ C^d` with the target ω on the first factor and
//! the (transposed) source on the second:
//!
//! ```text
//! D²(ρ, ω) = min tr(Π C)   s.t.  Π ⪰ 0,  tr₂ Π = ω,  tr₁ Π = ρᵀ
//! ```
//!
//! With a non-transposed cost the second marginal is ρ itself.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cost::CostOperator;
use crate::error::{Error, Result};
use crate::linalg::{
    check_same_dim, hermitian_basis, kron, kron_dense, CMatrix, DensityMatrix, HermitianMatrix,
    ObservableSet,
};
use crate::sdp::{InteriorPoint, SdpBackend, SdpProblem, SdpSettings, SdpStatus, SparseHermitian};

/// Values in `[-NEGATIVE_CLAMP, 0)` are reported as zero.
pub const NEGATIVE_CLAMP: f64 = 1e-9;
/// Largest eigenvalue threshold for treating a state as pure.
pub const PURITY_TOL: f64 = 1e-9;

/// A transport plan between two states.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    pub matrix: DensityMatrix,
}

/// Dual certificate pair: `C − Y⊗I − I⊗Xᵀ ⪰ 0` (no transpose for a
/// non-transposed cost), value `tr(Xρ) + tr(Yω)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificates {
    pub x: HermitianMatrix,
    pub y: HermitianMatrix,
}

#[derive(Clone, Debug)]
pub struct TransportResult {
    pub squared_distance: f64,
    pub coupling: Option<Coupling>,
    pub certificates: Option<Certificates>,
    /// Primal minus dual objective.
    pub duality_gap: f64,
    pub iterations: usize,
    pub status: SdpStatus,
}

impl TransportResult {
    pub fn distance(&self) -> f64 {
        self.squared_distance.sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub gap_tol: f64,
    pub feas_tol: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            gap_tol: 1e-8,
            feas_tol: 1e-8,
            max_iter: 200,
        }
    }
}

impl SolverConfig {
    /// Tolerances of `1e-10`, for absolute agreement near `1e-6` on values of
    /// order 10–100.
    pub fn tight() -> Self {
        Self {
            gap_tol: 1e-10,
            feas_tol: 1e-10,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gap_tol > 0.0) || !(self.feas_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "solver tolerances must be positive (gap {}, feasibility {})",
                self.gap_tol, self.feas_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    fn settings(&self) -> SdpSettings {
        SdpSettings {
            gap_tol: self.gap_tol,
            feas_tol: self.feas_tol,
            max_iter: self.max_iter,
        }
    }
}

fn clamp_nonnegative(v: f64) -> f64 {
    if (-NEGATIVE_CLAMP..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

fn check_inputs(rho: &DensityMatrix, omega: &DensityMatrix, c: &CostOperator) -> Result<()> {
    check_same_dim(c.dim(), rho.dim())?;
    check_same_dim(c.dim(), omega.dim())
}

/// The marginal that the second tensor factor must carry.
fn source_marginal(rho: &DensityMatrix, c: &CostOperator) -> DensityMatrix {
    if c.is_transposed() {
        rho.transpose()
    } else {
        rho.clone()
    }
}

/// Eigenvalues at or below this are treated as exact zeros of a marginal.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Support of one marginal: an isometry onto its range and the compressed
/// state. Full-rank marginals keep the computational basis.
struct Support {
    basis: CMatrix,
    state: CMatrix,
}

impl Support {
    fn of(m: &DensityMatrix) -> Self {
        let d = m.dim();
        let (values, vectors) = m.as_hermitian().eigh();
        if values[0] > SUPPORT_TOL {
            return Self {
                basis: CMatrix::identity(d, d),
                state: m.matrix().clone(),
            };
        }
        let kept: Vec<usize> = (0..d).filter(|&k| values[k] > SUPPORT_TOL).collect();
        let total: f64 = kept.iter().map(|&k| values[k]).sum();
        let basis = CMatrix::from_fn(d, kept.len(), |i, j| vectors[(i, kept[j])]);
        let diag: Vec<_> = kept.iter().map(|&k| Complex64::new(values[k] / total, 0.0)).collect();
        Self {
            basis,
            state: CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)),
        }
    }

    fn rank(&self) -> usize {
        self.basis.ncols()
    }

    fn lift(&self, m: &CMatrix) -> CMatrix {
        &self.basis * m * self.basis.adjoint()
    }
}

/// `√ρ` of the state compressed to its numerical support.
fn support_sqrt(rho: &DensityMatrix) -> HermitianMatrix {
    let (values, vectors) = rho.as_hermitian().eigh();
    let total: f64 = values.iter().filter(|&&v| v > SUPPORT_TOL).sum();
    HermitianMatrix::from_spectrum(
        values.iter().map(|&v| if v > SUPPORT_TOL { (v / total).sqrt() } else { 0.0 }),
        &vectors,
    )
}

/// The coupling SDP restricted to `supp ω ⊗ supp ρᵀ`.
///
/// Every coupling is supported there, so the restriction is exact. It also
/// restores a strictly feasible point when a marginal is rank deficient.
struct Reduced {
    problem: SdpProblem,
    target: Support,
    source: Support,
}

impl Reduced {
    fn new(rho: &DensityMatrix, omega: &DensityMatrix, c: &CostOperator) -> Result<Self> {
        let target = Support::of(omega);
        let source = Support::of(&source_marginal(rho, c));
        let (r1, r2) = (target.rank(), source.rank());
        let v = kron_dense(&target.basis, &source.basis);
        let cost = HermitianMatrix::hermitian_part(v.adjoint() * c.matrix().matrix() * &v).into_inner();
        let mut constraints = Vec::with_capacity(r1 * r1 + r2 * r2 - 1);
        let mut rhs = Vec::with_capacity(r1 * r1 + r2 * r2 - 1);
        let id1 = CMatrix::identity(r1, r1);
        let id2 = CMatrix::identity(r2, r2);
        let inner = |b: &HermitianMatrix, s: &CMatrix| (b.matrix() * s).trace().re;
        for b in hermitian_basis(r1) {
            constraints.push(SparseHermitian::from_dense(&kron_dense(b.matrix(), &id2)));
            rhs.push(inner(&b, &target.state));
        }
        // The last diagonal unit is implied by the trace fixed above.
        for (k, b) in hermitian_basis(r2).iter().enumerate() {
            if k == r2 - 1 {
                continue;
            }
            constraints.push(SparseHermitian::from_dense(&kron_dense(&id1, b.matrix())));
            rhs.push(inner(b, &source.state));
        }
        Ok(Self {
            problem: SdpProblem::new(cost, constraints, rhs)?,
            target,
            source,
        })
    }

    fn coupling(&self, x: &CMatrix) -> CMatrix {
        let v = kron_dense(&self.target.basis, &self.source.basis);
        &v * x * v.adjoint()
    }

    fn certificates(&self, y: &[f64], c: &CostOperator) -> Certificates {
        let (r1, r2) = (self.target.rank(), self.source.rank());
        let combine = |coeffs: &[f64], basis: &[HermitianMatrix], n: usize| {
            let mut m = CMatrix::zeros(n, n);
            for (w, b) in coeffs.iter().zip(basis) {
                m += b.matrix().scale(*w);
            }
            m
        };
        let b1 = hermitian_basis(r1);
        let mut b2 = hermitian_basis(r2);
        b2.remove(r2 - 1);
        let yy = self.target.lift(&combine(&y[..r1 * r1], &b1, r1));
        let z = self.source.lift(&combine(&y[r1 * r1..], &b2, r2));
        let yy = HermitianMatrix::hermitian_part(yy);
        let z = HermitianMatrix::hermitian_part(z);
        let x = if c.is_transposed() { z.transpose() } else { z };
        Certificates { x, y: yy }
    }
}

enum Side {
    Primal,
    Dual,
}

fn solve(
    backend: &dyn SdpBackend,
    side: Side,
    rho: &DensityMatrix,
    omega: &DensityMatrix,
    c: &CostOperator,
    cfg: &SolverConfig,
) -> Result<TransportResult> {
    check_inputs(rho, omega, c)?;
    cfg.validate()?;
    let reduced = Reduced::new(rho, omega, c)?;
    let sol = backend.solve(&reduced.problem, &cfg.settings())?;
    match sol.status {
        SdpStatus::InfeasibleDetected => {
            return Err(Error::SolverFailure("transport SDP reported infeasibility".into()))
        }
        SdpStatus::MaxIter => {
            let slack = 100.0;
            if sol.relative_gap() > slack * cfg.gap_tol
                || sol.primal_infeasibility > slack * cfg.feas_tol
                || sol.dual_infeasibility > slack * cfg.feas_tol
            {
                return Err(Error::SolverFailure(format!(
                    "no convergence after {} iterations (gap {:.2e}, primal residual {:.2e}, dual residual {:.2e})",
                    sol.iterations,
                    sol.relative_gap(),
                    sol.primal_infeasibility,
                    sol.dual_infeasibility
                )));
            }
        }
        SdpStatus::Optimal => {}
    }
    let duality_gap = sol.primal_objective - sol.dual_objective;
    Ok(match side {
        Side::Primal => {
            let coupling = DensityMatrix::normalized(HermitianMatrix::hermitian_part(reduced.coupling(&sol.x)))
                .map_err(|e| e.context("coupling"))?;
            TransportResult {
                squared_distance: clamp_nonnegative(sol.primal_objective),
                coupling: Some(Coupling { matrix: coupling }),
                certificates: None,
                duality_gap,
                iterations: sol.iterations,
                status: sol.status,
            }
        }
        Side::Dual => TransportResult {
            squared_distance: clamp_nonnegative(sol.dual_objective),
            coupling: None,
            certificates: Some(reduced.certificates(&sol.y, c)),
            duality_gap,
            iterations: sol.iterations,
            status: sol.status,
        },
    })
}

/// Minimizes `tr(Π C)` over couplings of `ρ` and `ω`.
pub fn solve_primal(
    rho: &DensityMatrix,
    omega: &DensityMatrix,
    c: &CostOperator,
    cfg: &SolverConfig,
) -> Result<TransportResult> {
    solve_primal_with(&InteriorPoint::default(), rho, omega, c, cfg)
}

pub fn solve_primal_with(
    backend: &dyn SdpBackend,
    rho: &DensityMatrix,
    omega: &DensityMatrix,
    c: &CostOperator,
    cfg: &SolverConfig,
) -> Result<TransportResult> {
    solve(backend, Side::Primal, rho, omega, c, cfg)
}

/// Maximizes `tr(Xρ) + tr(Yω)` over dual certificates.
pub fn solve_dual(
    rho: &DensityMatrix,
    omega: &DensityMatrix,
    c: &CostOperator,
    cfg: &SolverConfig,
) -> Result<TransportResult> {
    solve_dual_with(&InteriorPoint::default(), rho, omega, c, cfg)
}

pub fn solve_dual_with(
    backend: &dyn SdpBackend,
    rho: &DensityMatrix,
    omega: &DensityMatrix,
    c: &CostOperator,
    cfg: &SolverConfig,
) -> Result<TransportResult> {
    solve(backend, Side::Dual, rho, omega, c, cfg)
}

/// Dual value of a certificate pair together with the minimum eigenvalue of
/// the slack `C − Y⊗I − I⊗Xᵀ`; the pair is feasible when that is `≥ 0`.
pub fn evaluate_dual_certificate(
    rho: &DensityMatrix,
    omega: &DensityMatrix,
    c: &CostOperator,
    cert: &Certificates,
) -> Result<(f64, f64)> {
    check_inputs(rho, omega, c)?;
    check_same_dim(c.dim(), cert.x.dim())?;
    check_same_dim(c.dim(), cert.y.dim())?;
    let id = HermitianMatrix::identity(c.dim());
    let xt = if c.is_transposed() {
        cert.x.transpose()
    } else {
        cert.x.clone()
    };
    let slack = c.matrix().sub(&kron(&cert.y, &id))?.sub(&kron(&id, &xt))?;
    let value = rho.expectation(&cert.x) + omega.expectation(&cert.y);
    Ok((value, slack.min_eigenvalue()))
}

/// `tr((ω ⊗ ρᵀ) C)`, the cost of the product coupling.
pub fn tensor_coupling_cost(rho: &DensityMatrix, omega: &DensityMatrix, c: &CostOperator) -> Result<f64> {
    check_inputs(rho, omega, c)?;
    let plan = kron(omega.as_hermitian(), source_marginal(rho, c).as_hermitian());
    Ok(plan.trace_product(c.matrix()))
}

/// Closed form when one of the states is pure, so the product coupling is the
/// only one: `Σ_j tr(A_j ω A_j) + tr(A_j ρ A_j) − 2 tr(ω A_j) tr(ρ A_j)`.
pub fn pure_state_distance_sq(rho: &DensityMatrix, omega: &DensityMatrix, a: &ObservableSet) -> Result<f64> {
    check_same_dim(a.dim(), rho.dim())?;
    check_same_dim(a.dim(), omega.dim())?;
    let pr = rho.as_hermitian().max_eigenvalue();
    let pw = omega.as_hermitian().max_eigenvalue();
    if pr < 1.0 - PURITY_TOL && pw < 1.0 - PURITY_TOL {
        return Err(Error::NeitherPure(pr, pw));
    }
    let total: f64 = a
        .iter()
        .map(|aj| {
            let sq = aj.sandwich(&HermitianMatrix::identity(aj.dim())).expect("same dim");
            omega.expectation(&sq) + rho.expectation(&sq)
                - 2.0 * omega.expectation(aj) * rho.expectation(aj)
        })
        .sum();
    Ok(clamp_nonnegative(total))
}

/// Self-distance realized by the canonical purification:
/// `Σ_j 2 tr(A_j ρ A_j) − 2 tr(√ρ A_j √ρ A_j)`.
///
/// This is the optimal value for the transposed cost convention.
///
/// Eigenvalues at or below [`SUPPORT_TOL`] are dropped as in the SDP, so the
/// two agree on states at the edge of the state space.
pub fn self_distance_sq(rho: &DensityMatrix, a: &ObservableSet) -> Result<f64> {
    check_same_dim(a.dim(), rho.dim())?;
    let root = support_sqrt(rho);
    let total: f64 = a
        .iter()
        .map(|aj| {
            // ‖A√ρ − √ρA‖²_HS
            let comm = aj.matrix() * root.matrix() - root.matrix() * aj.matrix();
            comm.norm_squared()
        })
        .sum();
    Ok(clamp_nonnegative(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{build_cost, symmetric_cost};
    use crate::linalg::{partial_trace, pauli, Keep};

    fn bloch(b: [f64; 3]) -> DensityMatrix {
        let mut m = HermitianMatrix::identity(2);
        for (j, bj) in b.iter().enumerate() {
            m = m.add(&pauli(j + 1).scale(*bj)).unwrap();
        }
        DensityMatrix::new(m.scale(0.5)).unwrap()
    }

    #[test]
    fn sharp_pair_value() {
        let rho = bloch([0.5, 0.0, 0.0]);
        let omega = bloch([0.0, 0.5, 0.0]);
        let r = solve_primal(&rho, &omega, &symmetric_cost(), &SolverConfig::default()).unwrap();
        assert_eq!(r.status, SdpStatus::Optimal);
        assert!((r.squared_distance - 2.0 * 2f64.sqrt()).abs() < 1e-6, "{}", r.squared_distance);
    }

    #[test]
    fn commuting_pure_pair_is_free() {
        let rho = DensityMatrix::basis_state(2, 0).unwrap();
        let c = build_cost(&ObservableSet::new(vec![pauli(3)]).unwrap(), true);
        let r = solve_primal(&rho, &rho, &c, &SolverConfig::default()).unwrap();
        assert!(r.squared_distance.abs() < 1e-7);
        let pi = r.coupling.unwrap().matrix;
        let product = kron(rho.as_hermitian(), rho.transpose().as_hermitian());
        assert!((pi.matrix() - product.matrix()).norm() < 1e-6);
    }

    #[test]
    fn maximally_mixed_self_distance() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        let r = solve_primal(&rho, &rho, &symmetric_cost(), &SolverConfig::default()).unwrap();
        assert!(r.squared_distance.abs() < 1e-7);
        let a = ObservableSet::new(vec![pauli(1), pauli(2), pauli(3)]).unwrap();
        assert_eq!(self_distance_sq(&rho, &a).unwrap(), 0.0);
    }

    #[test]
    fn coupling_marginals() {
        let rho = bloch([0.3, -0.2, 0.1]);
        let omega = bloch([-0.1, 0.4, 0.5]);
        let c = symmetric_cost();
        let r = solve_primal(&rho, &omega, &c, &SolverConfig::default()).unwrap();
        let pi = r.coupling.unwrap().matrix;
        let first = partial_trace(pi.as_hermitian(), Keep::First, (2, 2)).unwrap();
        let second = partial_trace(pi.as_hermitian(), Keep::Second, (2, 2)).unwrap();
        assert!((first.matrix() - omega.matrix()).norm() < 1e-7);
        assert!((second.matrix() - rho.transpose().matrix()).norm() < 1e-7);
    }

    #[test]
    fn dual_certificate_is_feasible_and_tight() {
        let rho = bloch([0.5, 0.0, 0.0]);
        let omega = bloch([0.0, 0.5, 0.0]);
        let c = symmetric_cost();
        let r = solve_dual(&rho, &omega, &c, &SolverConfig::default()).unwrap();
        let cert = r.certificates.unwrap();
        let (value, min_eig) = evaluate_dual_certificate(&rho, &omega, &c, &cert).unwrap();
        assert!(min_eig > -1e-6, "{min_eig}");
        assert!((value - r.squared_distance).abs() < 1e-6);
        assert!((value - 2.0 * 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn zero_certificate() {
        let rho = bloch([0.1, 0.2, 0.3]);
        let c = symmetric_cost();
        let zero = Certificates {
            x: HermitianMatrix::zeros(2),
            y: HermitianMatrix::zeros(2),
        };
        let (value, min_eig) = evaluate_dual_certificate(&rho, &rho, &c, &zero).unwrap();
        assert_eq!(value, 0.0);
        assert!(min_eig >= -1e-12);
    }

    #[test]
    fn pure_formula_examples() {
        let up = DensityMatrix::basis_state(2, 0).unwrap();
        let down = DensityMatrix::basis_state(2, 1).unwrap();
        let z = ObservableSet::new(vec![pauli(3)]).unwrap();
        assert!((pure_state_distance_sq(&up, &down, &z).unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(pure_state_distance_sq(&up, &up, &z).unwrap(), 0.0);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(matches!(
            pure_state_distance_sq(&mixed, &mixed, &z),
            Err(Error::NeitherPure(..))
        ));
    }

    #[test]
    fn pure_self_distance_is_four() {
        let a = ObservableSet::new(vec![pauli(1), pauli(2), pauli(3)]).unwrap();
        let psi = bloch([0.6, 0.0, 0.8]);
        assert!((self_distance_sq(&psi, &a).unwrap() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn dimension_mismatch() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        let omega = DensityMatrix::maximally_mixed(3).unwrap();
        let err = solve_primal(&rho, &omega, &symmetric_cost(), &SolverConfig::default()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }
}

//! Infeasible primal-dual path-following method with Nesterov–Todd scaling
//! and a Mehrotra predictor-corrector.
//!
//! Works directly on complex Hermitian matrices. Per iteration:
//!
//! 1. NT scaling point `W` with `W S W = X`, built from Cholesky factors
//!    `X = L L†`, `S = R R†` and the SVD `R† L = U Λ V†`:
//!    `G = L V Λ^{-1/2}`, `W = G G†`. In the scaled space both iterates
//!    become the diagonal `Λ`.
//! 2. Scaled constraints `Ã_i = G† A_i G`, whose Gram matrix is the Schur
//!    complement `Re tr(A_i W A_j W)`. A thin QR of the stacked `Ã_i` is
//!    factored once and shared by both directions.
//! 3. Predictor with target `ΔX + W ΔS W = −X`, then a corrector with
//!    centering `σ = (μ_aff / μ)³` and the second-order term.

use nalgebra::{Cholesky, DMatrix, DVector};
use num_complex::Complex64;

use super::{SdpBackend, SdpProblem, SdpSettings, SdpSolution, SdpStatus};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Built-in SDP backend.
#[derive(Clone, Copy, Debug)]
pub struct InteriorPoint {
    /// Fraction of the distance to the cone boundary taken per step.
    pub step_fraction: f64,
}

impl Default for InteriorPoint {
    fn default() -> Self {
        Self { step_fraction: 0.98 }
    }
}

struct Iterate {
    x: CMatrix,
    y: Vec<f64>,
    s: CMatrix,
}

struct Residuals {
    rp: Vec<f64>,
    rd: CMatrix,
    pobj: f64,
    dobj: f64,
    mu: f64,
    pinf: f64,
    dinf: f64,
    gap: f64,
}

struct Scaling {
    g: CMatrix,
    lambda: Vec<f64>,
}

fn hermitize(m: &mut CMatrix) {
    let n = m.nrows();
    for i in 0..n {
        m[(i, i)].im = 0.0;
        for j in i + 1..n {
            let v = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
}

/// `Re tr(A B)` for Hermitian `A`.
fn re_inner(a: &CMatrix, b: &CMatrix) -> f64 {
    a.dotc(b).re
}

/// Real coordinates of a Hermitian matrix in which `Re tr(A B)` is the dot product.
fn hvec(m: &CMatrix) -> DVector<f64> {
    let n = m.nrows();
    let mut v = DVector::zeros(n * n);
    let mut k = 0;
    for i in 0..n {
        v[k] = m[(i, i)].re;
        k += 1;
        for j in i + 1..n {
            let z = m[(i, j)] * std::f64::consts::SQRT_2;
            v[k] = z.re;
            v[k + 1] = z.im;
            k += 2;
        }
    }
    v
}

fn hmat(v: &DVector<f64>, n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        m[(i, i)] = Complex64::new(v[k], 0.0);
        k += 1;
        for j in i + 1..n {
            let z = Complex64::new(v[k], v[k + 1]) * std::f64::consts::FRAC_1_SQRT_2;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
            k += 2;
        }
    }
    m
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Largest step `α` keeping `Λ + α D ⪰ 0`, from the eigenvalues of `Λ^{-1/2} D Λ^{-1/2}`.
fn max_step(lambda_inv_sqrt: &[f64], scaled: &CMatrix) -> f64 {
    let n = lambda_inv_sqrt.len();
    let mut p = CMatrix::from_fn(n, n, |i, j| {
        scaled[(i, j)] * (lambda_inv_sqrt[i] * lambda_inv_sqrt[j])
    });
    hermitize(&mut p);
    let min = p
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min >= 0.0 {
        f64::INFINITY
    } else {
        -1.0 / min
    }
}

impl InteriorPoint {
    fn residuals(problem: &SdpProblem, it: &Iterate, norm_b: f64, norm_c: f64) -> Residuals {
        let n = problem.dim() as f64;
        let ax = problem.apply_constraints(&it.x);
        let rp: Vec<f64> = problem.rhs.iter().zip(&ax).map(|(b, a)| b - a).collect();
        let rd = &problem.cost - &it.s - problem.adjoint_constraints(&it.y);
        let pobj = re_inner(&problem.cost, &it.x);
        let dobj: f64 = problem.rhs.iter().zip(&it.y).map(|(b, y)| b * y).sum();
        let xs = re_inner(&it.x, &it.s);
        let denom = 1.0 + pobj.abs() + dobj.abs();
        Residuals {
            pinf: norm2(&rp) / (1.0 + norm_b),
            dinf: rd.norm() / (1.0 + norm_c),
            gap: xs.max((pobj - dobj).abs()) / denom,
            mu: xs / n,
            rp,
            rd,
            pobj,
            dobj,
        }
    }

    fn scaling(it: &Iterate) -> Option<Scaling> {
        let lx = Cholesky::new(it.x.clone())?.unpack();
        let ls = Cholesky::new(it.s.clone())?.unpack();
        let k = ls.adjoint() * &lx;
        let svd = k.svd(false, true);
        let v = svd.v_t?.adjoint();
        let lambda: Vec<f64> = svd.singular_values.iter().copied().collect();
        if lambda.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
            return None;
        }
        let mut g = &lx * &v;
        for (j, &l) in lambda.iter().enumerate() {
            g.column_mut(j).unscale_mut(l.sqrt());
        }
        Some(Scaling { g, lambda })
    }
}

impl SdpBackend for InteriorPoint {
    fn solve(&self, problem: &SdpProblem, settings: &SdpSettings) -> Result<SdpSolution> {
        let n = problem.dim();
        let m = problem.constraints.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let norm_b = norm2(&problem.rhs);
        let norm_c = problem.cost.norm();
        let a_norms: Vec<f64> = problem.constraints.iter().map(|a| a.frobenius_norm()).collect();
        let sqrt_n = (n as f64).sqrt();

        let xi = problem
            .rhs
            .iter()
            .zip(&a_norms)
            .map(|(b, a)| n as f64 * (1.0 + b.abs()) / (1.0 + a))
            .fold(sqrt_n.max(10.0), f64::max);
        let eta = a_norms.iter().copied().fold(sqrt_n.max(10.0).max(norm_c), f64::max);

        let mut it = Iterate {
            x: CMatrix::identity(n, n).scale(xi),
            y: vec![0.0; m],
            s: CMatrix::identity(n, n).scale(eta),
        };

        let tau = self.step_fraction;
        let mut best: Option<(f64, SdpSolution)> = None;
        let mut status = SdpStatus::MaxIter;

        for iter in 0..=settings.max_iter {
            let res = Self::residuals(problem, &it, norm_b, norm_c);
            let score = (res.gap / settings.gap_tol)
                .max(res.pinf / settings.feas_tol)
                .max(res.dinf / settings.feas_tol);
            if score.is_finite() && best.as_ref().is_none_or(|(s, _)| score < *s) {
                best = Some((
                    score,
                    SdpSolution {
                        x: it.x.clone(),
                        y: it.y.clone(),
                        s: it.s.clone(),
                        primal_objective: res.pobj,
                        dual_objective: res.dobj,
                        primal_infeasibility: res.pinf,
                        dual_infeasibility: res.dinf,
                        iterations: iter,
                        status: SdpStatus::MaxIter,
                    },
                ));
            }
            if score <= 1.0 {
                status = SdpStatus::Optimal;
                break;
            }
            if iter == settings.max_iter {
                break;
            }
            if it.x.norm() > 1e12 || norm2(&it.y) > 1e12 {
                status = SdpStatus::InfeasibleDetected;
                break;
            }

            let Some(sc) = Self::scaling(&it) else { break };

            // ΔX̃ = ṽ + Q(R⁻ᵀ r_p − Qᵀṽ) satisfies Ã(ΔX̃) = r_p to working
            // precision even when the Schur complement is badly conditioned.
            let mut stacked = DMatrix::<f64>::zeros(n * n, m);
            for (i, a) in problem.constraints.iter().enumerate() {
                stacked.set_column(i, &hvec(&a.congruence(&sc.g)));
            }
            let qr = stacked.qr();
            let q = qr.q();
            let r = qr.r();
            let rmax = r.diagonal().iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
            if r.diagonal().iter().any(|v| !(v.abs() > 1e-14 * rmax)) {
                break;
            }
            let rp = DVector::from_column_slice(&res.rp);
            let Some(t) = r.tr_solve_upper_triangular(&rp) else { break };
            let rd_scaled = sc.g.adjoint() * &res.rd * &sc.g;

            // Returns (ΔX, Δy, ΔS, ΔX̃, ΔS̃) for the scaled right-hand side R̃c.
            let direction = |rc_scaled: &CMatrix| -> Option<(CMatrix, Vec<f64>, CMatrix, CMatrix, CMatrix)> {
                let v = hvec(&(rc_scaled - &rd_scaled));
                let u = &t - q.tr_mul(&v);
                let dy = r.solve_upper_triangular(&u)?;
                let dxt = hmat(&(v + &q * &u), n);
                let dy: Vec<f64> = dy.iter().copied().collect();
                let mut ds = &res.rd - problem.adjoint_constraints(&dy);
                hermitize(&mut ds);
                let mut dx = &sc.g * &dxt * sc.g.adjoint();
                hermitize(&mut dx);
                let dst = sc.g.adjoint() * &ds * &sc.g;
                Some((dx, dy, ds, dxt, dst))
            };

            let lambda_inv_sqrt: Vec<f64> = sc.lambda.iter().map(|l| 1.0 / l.sqrt()).collect();

            // Predictor: R̃c = −Λ.
            let neg_lambda = CMatrix::from_diagonal(&DVector::from_iterator(
                n,
                sc.lambda.iter().map(|l| Complex64::new(-l, 0.0)),
            ));
            let Some((dx_a, _, ds_a, dxt_a, dst_a)) = direction(&neg_lambda) else { break };
            let ap = (tau * max_step(&lambda_inv_sqrt, &dxt_a)).min(1.0);
            let ad = (tau * max_step(&lambda_inv_sqrt, &dst_a)).min(1.0);
            let x_aff = &it.x + dx_a.scale(ap);
            let s_aff = &it.s + ds_a.scale(ad);
            let mu_aff = re_inner(&x_aff, &s_aff) / n as f64;
            let sigma = if res.mu > 0.0 {
                (mu_aff / res.mu).clamp(0.0, 1.0).powi(3)
            } else {
                0.0
            };

            // Corrector: solve Λ R̃ + R̃ Λ = 2(σμI − Λ² − sym(ΔX̃ ΔS̃)) elementwise.
            let second_order = &dxt_a * &dst_a;
            let target = sigma * res.mu;
            let rt = CMatrix::from_fn(n, n, |i, j| {
                let sym = (second_order[(i, j)] + second_order[(j, i)].conj()) * 0.5;
                let mut h = -sym;
                if i == j {
                    h += Complex64::new(target - sc.lambda[i] * sc.lambda[i], 0.0);
                }
                h * (2.0 / (sc.lambda[i] + sc.lambda[j]))
            });
            let Some((dx, dy, ds, dxt, dst)) = direction(&rt) else { break };
            let ap = (tau * max_step(&lambda_inv_sqrt, &dxt)).min(1.0);
            let ad = (tau * max_step(&lambda_inv_sqrt, &dst)).min(1.0);
            if !(ap > 0.0 && ad > 0.0) {
                break;
            }

            it.x += dx.scale(ap);
            hermitize(&mut it.x);
            for (yi, di) in it.y.iter_mut().zip(&dy) {
                *yi += ad * di;
            }
            it.s += ds.scale(ad);
            hermitize(&mut it.s);
        }

        let (_, mut sol) = best.ok_or_else(|| Error::SolverFailure("no finite iterate".into()))?;
        sol.status = if status == SdpStatus::InfeasibleDetected {
            SdpStatus::InfeasibleDetected
        } else if status == SdpStatus::Optimal && sol.relative_gap() <= settings.gap_tol {
            SdpStatus::Optimal
        } else {
            let ok = sol.relative_gap() <= settings.gap_tol
                && sol.primal_infeasibility <= settings.feas_tol
                && sol.dual_infeasibility <= settings.feas_tol;
            if ok {
                SdpStatus::Optimal
            } else {
                SdpStatus::MaxIter
            }
        };
        Ok(sol)
    }
}

//! Wasserstein complexity of a channel, `C_W(Φ) = max_ρ d(ρ, Φ(ρ))`.
//!
//! The maximum is searched by multi-start Nelder–Mead over factors `L` with
//! `ρ = L L† / tr(L L†)`; reported values are lower bounds on the true maximum.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::divergence::DivergenceEvaluator;
use crate::error::{Error, Result};
use crate::linalg::{kron_dense, pauli, sqrt_psd, CMatrix, DensityMatrix, HermitianMatrix, ObservableSet};
use crate::nelder_mead::{minimize, NelderMeadOptions};
use crate::random::{gaussian_matrix, random_state, RngStream};
use crate::transport::SolverConfig;

/// Tolerance on `Σ K_i† K_i = I`.
pub const TP_TOL: f64 = 1e-9;

/// A channel in Kraus form.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSpec {
    kraus: Vec<CMatrix>,
}

impl ChannelSpec {
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::InvalidParameter("channel needs at least one Kraus operator".into()))?;
        let d = first.nrows();
        if d == 0 {
            return Err(Error::EmptyMatrix);
        }
        for k in &kraus {
            if k.nrows() != k.ncols() {
                return Err(Error::NotSquare(k.nrows(), k.ncols()));
            }
            if k.nrows() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: k.nrows(),
                });
            }
        }
        let mut sum = -CMatrix::identity(d, d);
        for k in &kraus {
            sum += k.adjoint() * k;
        }
        let err = sum.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if err > TP_TOL {
            return Err(Error::NotTracePreserving(err));
        }
        Ok(Self { kraus })
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].nrows()
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(vec![CMatrix::identity(dim, dim)])
    }

    pub fn unitary(u: CMatrix) -> Result<Self> {
        Self::new(vec![u])
    }

    /// Qubit depolarizing channel `ρ ↦ (1 − p) ρ + p I/2`.
    pub fn depolarizing(p: f64) -> Result<Self> {
        check_probability(p)?;
        let mut kraus = vec![pauli(0).matrix().scale((1.0 - 0.75 * p).sqrt())];
        for j in 1..=3 {
            kraus.push(pauli(j).matrix().scale((p / 4.0).sqrt()));
        }
        Self::new(kraus)
    }

    /// Qubit dephasing channel `ρ ↦ (1 − p) ρ + p σ₃ ρ σ₃`.
    pub fn dephasing(p: f64) -> Result<Self> {
        check_probability(p)?;
        Self::new(vec![
            pauli(0).matrix().scale((1.0 - p).sqrt()),
            pauli(3).matrix().scale(p.sqrt()),
        ])
    }

    /// Random channel with `kraus_count` operators: the blocks of a
    /// Haar-like isometry obtained from the QR factor of a Gaussian matrix.
    pub fn random<R: rand::Rng + ?Sized>(dim: usize, kraus_count: usize, rng: &mut R) -> Result<Self> {
        if dim == 0 || kraus_count == 0 {
            return Err(Error::InvalidParameter("random channel needs positive dimension and Kraus count".into()));
        }
        let g = gaussian_matrix(kraus_count * dim, dim, rng);
        let v = g.qr().q();
        let kraus = (0..kraus_count)
            .map(|k| v.rows(k * dim, dim).into_owned())
            .collect();
        Self::new(kraus)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// `Σ_i K_i ρ K_i†`.
pub fn apply_channel(phi: &ChannelSpec, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if phi.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: rho.dim(),
        });
    }
    let d = rho.dim();
    let mut out = CMatrix::zeros(d, d);
    for k in &phi.kraus {
        out += k * rho.matrix() * k.adjoint();
    }
    let h = HermitianMatrix::new(out)?;
    match DensityMatrix::new(h.clone()) {
        Err(Error::InvalidTrace(_)) => DensityMatrix::normalized(h),
        other => other,
    }
}

/// `second ∘ first`.
pub fn compose(first: &ChannelSpec, second: &ChannelSpec) -> Result<ChannelSpec> {
    let kraus = second
        .kraus
        .iter()
        .flat_map(|b| first.kraus.iter().map(move |a| b * a))
        .collect();
    ChannelSpec::new(kraus)
}

/// `Φ₁ ⊗ Φ₂` on the product space.
pub fn tensor(phi1: &ChannelSpec, phi2: &ChannelSpec) -> Result<ChannelSpec> {
    let kraus = phi1
        .kraus
        .iter()
        .flat_map(|a| phi2.kraus.iter().map(move |b| kron_dense(a, b)))
        .collect();
    ChannelSpec::new(kraus)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Function evaluations per restart; `None` means `250 × parameters`.
    pub max_evals: Option<usize>,
}

impl Default for ComplexityOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            seed: 0,
            max_evals: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityResult {
    /// Best divergence found, a lower bound on `C_W(Φ)`.
    pub value: f64,
    pub argmax_state: DensityMatrix,
    pub restarts_used: usize,
    /// The two best restarts agree within `1e-4`.
    pub converged: bool,
    pub initial_values: Vec<f64>,
    pub restart_values: Vec<f64>,
}

/// Agreement required between the two best restarts.
pub const RESTART_AGREEMENT: f64 = 1e-4;

fn params_of(l: &CMatrix) -> Vec<f64> {
    let d = l.nrows();
    let mut x = Vec::with_capacity(2 * d * d);
    for i in 0..d {
        for j in 0..d {
            x.push(l[(i, j)].re);
            x.push(l[(i, j)].im);
        }
    }
    x
}

/// `L L† / tr(L L†)` for `L` read row-major from `(re, im)` pairs.
pub fn state_from_params(x: &[f64], dim: usize) -> Result<DensityMatrix> {
    if x.len() != 2 * dim * dim {
        return Err(Error::DimensionMismatch {
            expected: 2 * dim * dim,
            found: x.len(),
        });
    }
    let l = DMatrix::from_fn(dim, dim, |i, j| Complex64::new(x[2 * (i * dim + j)], x[2 * (i * dim + j) + 1]));
    DensityMatrix::normalized(HermitianMatrix::new(&l * l.adjoint())?)
}

/// Starting states: maximally mixed, the computational basis, then Wishart
/// draws from streams `0, 1, …` of `seed`.
fn starting_states(dim: usize, restarts: usize, seed: u64) -> Result<Vec<DensityMatrix>> {
    let mut starts = vec![DensityMatrix::maximally_mixed(dim)?];
    for k in 0..dim {
        starts.push(DensityMatrix::basis_state(dim, k)?);
    }
    let mut stream = 0;
    while starts.len() < restarts {
        starts.push(random_state(dim, dim, &mut RngStream::new(seed, stream).rng())?);
        stream += 1;
    }
    starts.truncate(restarts);
    Ok(starts)
}

pub fn wasserstein_complexity(
    phi: &ChannelSpec,
    a: &ObservableSet,
    restarts: usize,
    cfg: &SolverConfig,
) -> Result<ComplexityResult> {
    wasserstein_complexity_with(
        phi,
        a,
        cfg,
        &ComplexityOptions {
            restarts,
            ..ComplexityOptions::default()
        },
    )
}

pub fn wasserstein_complexity_with(
    phi: &ChannelSpec,
    a: &ObservableSet,
    cfg: &SolverConfig,
    opts: &ComplexityOptions,
) -> Result<ComplexityResult> {
    if opts.restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be at least 1".into()));
    }
    let d = phi.dim();
    if a.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: a.dim(),
        });
    }
    let ev = DivergenceEvaluator::new(a, *cfg).without_cache();
    let objective = |rho: &DensityMatrix| -> Result<f64> { Ok(ev.divergence(rho, &apply_channel(phi, rho)?)?.value) };
    let nm = NelderMeadOptions {
        initial_step: 0.1,
        max_evals: opts.max_evals.unwrap_or(250 * 2 * d * d),
        // Solver noise sits near 1e-9, so tighter tolerances never trigger.
        f_tol: 1e-8,
        x_tol: 1e-5,
    };

    let starts = starting_states(d, opts.restarts, opts.seed)?;
    let runs = starts
        .into_par_iter()
        .map(|rho0| -> Result<(f64, f64, DensityMatrix)> {
            let initial = objective(&rho0)?;
            let x0 = params_of(sqrt_psd(rho0.as_hermitian())?.matrix());
            let f = |x: &[f64]| -> Result<f64> {
                match state_from_params(x, d) {
                    Ok(rho) => Ok(-objective(&rho)?),
                    // A vanishing factor is not a state; steer away from it.
                    Err(Error::InvalidTrace(_)) => Ok(f64::INFINITY),
                    Err(e) => Err(e),
                }
            };
            let res = minimize(f, &x0, &nm)?;
            let found = state_from_params(&res.x, d)?;
            // Nelder–Mead never moves off its best vertex, and the start is a vertex.
            if -res.value >= initial {
                Ok((initial, -res.value, found))
            } else {
                Ok((initial, initial, rho0))
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let initial_values: Vec<f64> = runs.iter().map(|r| r.0).collect();
    let restart_values: Vec<f64> = runs.iter().map(|r| r.1).collect();
    let mut order: Vec<usize> = (0..runs.len()).collect();
    order.sort_by(|&i, &j| restart_values[j].total_cmp(&restart_values[i]).then(i.cmp(&j)));
    let best = order[0];
    let converged = order.len() >= 2 && restart_values[best] - restart_values[order[1]] <= RESTART_AGREEMENT;
    let (_, value, argmax_state) = runs.into_iter().nth(best).expect("nonempty");
    Ok(ComplexityResult {
        value,
        argmax_state,
        restarts_used: opts.restarts,
        converged,
        initial_values,
        restart_values,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubadditivityReport {
    pub first: f64,
    pub second: f64,
    pub composed: f64,
    /// `C_W(Φ₁) + C_W(Φ₂) − C_W(Φ₂ ∘ Φ₁)`.
    pub slack: f64,
    /// Set when the slack is below `-SLACK_WARNING`, which points at an
    /// optimizer shortfall rather than a counterexample.
    pub warning: bool,
}

pub const SLACK_WARNING: f64 = 5e-4;

pub fn subadditivity_report(
    phi1: &ChannelSpec,
    phi2: &ChannelSpec,
    a: &ObservableSet,
    cfg: &SolverConfig,
    opts: &ComplexityOptions,
) -> Result<SubadditivityReport> {
    if phi1.dim() != phi2.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi1.dim(),
            found: phi2.dim(),
        });
    }
    let first = wasserstein_complexity_with(phi1, a, cfg, opts)?.value;
    let second = wasserstein_complexity_with(phi2, a, cfg, opts)?.value;
    let composed = wasserstein_complexity_with(&compose(phi1, phi2)?, a, cfg, opts)?.value;
    let slack = first + second - composed;
    Ok(SubadditivityReport {
        first,
        second,
        composed,
        slack,
        warning: slack < -SLACK_WARNING,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_only() -> ObservableSet {
        ObservableSet::new(vec![pauli(3)]).unwrap()
    }

    #[test]
    fn identity_and_unitary_action() {
        let mut rng = RngStream::new(1, 0).rng();
        let rho = random_state(3, 3, &mut rng).unwrap();
        assert_eq!(apply_channel(&ChannelSpec::identity(3).unwrap(), &rho).unwrap(), rho);
        let x = ChannelSpec::unitary(pauli(1).into_inner()).unwrap();
        let up = DensityMatrix::basis_state(2, 0).unwrap();
        assert_eq!(apply_channel(&x, &up).unwrap(), DensityMatrix::basis_state(2, 1).unwrap());
    }

    #[test]
    fn full_depolarizing_gives_maximally_mixed() {
        let phi = ChannelSpec::depolarizing(1.0).unwrap();
        let mut rng = RngStream::new(2, 0).rng();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        for _ in 0..20 {
            let rho = random_state(2, 2, &mut rng).unwrap();
            let out = apply_channel(&phi, &rho).unwrap();
            assert!((out.matrix() - mixed.matrix()).norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_trace_preserving() {
        let k = CMatrix::identity(2, 2).scale(0.9);
        assert!(matches!(ChannelSpec::new(vec![k]), Err(Error::NotTracePreserving(_))));
        assert!(ChannelSpec::depolarizing(1.5).is_err());
    }

    #[test]
    fn random_channels_are_trace_preserving() {
        let mut rng = RngStream::new(3, 0).rng();
        for k in 1..4 {
            let phi = ChannelSpec::random(3, k, &mut rng).unwrap();
            assert_eq!(phi.kraus().len(), k);
        }
    }

    #[test]
    fn composition_and_tensor() {
        let x = ChannelSpec::unitary(pauli(1).into_inner()).unwrap();
        let xx = compose(&x, &x).unwrap();
        let mut rng = RngStream::new(4, 0).rng();
        let rho = random_state(2, 2, &mut rng).unwrap();
        let back = apply_channel(&xx, &rho).unwrap();
        assert!((back.matrix() - rho.matrix()).norm() < 1e-14);
        let t = tensor(&x, &ChannelSpec::identity(2).unwrap()).unwrap();
        assert_eq!(t.dim(), 4);
    }

    #[test]
    fn params_round_trip() {
        let mut rng = RngStream::new(5, 0).rng();
        let rho = random_state(3, 3, &mut rng).unwrap();
        let x = params_of(sqrt_psd(rho.as_hermitian()).unwrap().matrix());
        let back = state_from_params(&x, 3).unwrap();
        assert!((back.matrix() - rho.matrix()).norm() < 1e-12);
    }

    #[test]
    fn identity_channel_is_free() {
        let r = wasserstein_complexity(&ChannelSpec::identity(2).unwrap(), &z_only(), 4, &SolverConfig::default()).unwrap();
        assert!(r.value <= 1e-6);
        assert!(r.converged);
    }

    #[test]
    fn bit_flip_reaches_two() {
        let x = ChannelSpec::unitary(pauli(1).into_inner()).unwrap();
        let r = wasserstein_complexity(&x, &z_only(), 4, &SolverConfig::default()).unwrap();
        assert!(r.value >= 2.0 - 1e-4, "{}", r.value);
        for (init, fin) in r.initial_values.iter().zip(&r.restart_values) {
            assert!(fin >= init);
        }
        let again = crate::divergence::divergence(
            &r.argmax_state,
            &apply_channel(&x, &r.argmax_state).unwrap(),
            &z_only(),
            &SolverConfig::default(),
        )
        .unwrap();
        assert!((again.value - r.value).abs() < 1e-6);
    }
}

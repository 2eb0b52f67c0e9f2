use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::pauli_product_set;
use crate::divergence::DivergenceEvaluator;
use crate::error::{Error, Result};
use crate::linalg::{pauli, pauli_string, DensityMatrix, HermitianMatrix, ObservableSet};
use crate::random::{random_observable_set, random_state, RngStream};
use crate::transport::SolverConfig;

/// Admissibility threshold on the smallest eigenvalue of `ω(x, y)`.
const ADMISSIBLE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    C2Deterministic,
    C4Deterministic,
    C2Random,
    C4Random,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [
        Scenario::C2Deterministic,
        Scenario::C4Deterministic,
        Scenario::C2Random,
        Scenario::C4Random,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::C2Deterministic => "c2-deterministic",
            Scenario::C4Deterministic => "c4-deterministic",
            Scenario::C2Random => "c2-random",
            Scenario::C4Random => "c4-random",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Scenario::C2Deterministic | Scenario::C2Random => 2,
            Scenario::C4Deterministic | Scenario::C4Random => 4,
        }
    }

    /// Half-width of the square `[-h, h]²` sampled by the grid.
    pub fn half_width(&self) -> f64 {
        match self {
            Scenario::C2Deterministic => std::f64::consts::FRAC_1_SQRT_2,
            Scenario::C2Random => (24.0f64 / 25.0).sqrt(),
            Scenario::C4Deterministic | Scenario::C4Random => 1.0,
        }
    }

    /// `ω(x, y)` as a Hermitian matrix; it may fail to be positive.
    pub fn omega(&self, x: f64, y: f64) -> HermitianMatrix {
        let id = HermitianMatrix::identity(self.dim());
        let terms: Vec<(f64, HermitianMatrix)> = match self {
            Scenario::C2Deterministic | Scenario::C2Random => {
                let z = if *self == Scenario::C2Deterministic {
                    std::f64::consts::FRAC_1_SQRT_2
                } else {
                    0.2
                };
                vec![(x, pauli(1)), (y, pauli(2)), (z, pauli(3))]
            }
            Scenario::C4Deterministic | Scenario::C4Random => vec![
                (x, pauli_string(&[0, 1])),
                (y, pauli_string(&[0, 2])),
                (0.1, pauli_string(&[1, 0])),
                (0.1, pauli_string(&[1, 1])),
                (0.1, pauli_string(&[1, 2])),
                (0.3, pauli_string(&[2, 0])),
                (0.2, pauli_string(&[2, 2])),
            ],
        };
        affine_state(id, &terms)
    }

    /// The fixed `ρ`, `τ` and observables of the scenario.
    fn setup(&self, seed: u64, observables: usize) -> Result<(DensityMatrix, DensityMatrix, ObservableSet)> {
        match self {
            Scenario::C2Deterministic => {
                let rho = affine_state(
                    HermitianMatrix::identity(2),
                    &[(1.0 / 2f64.sqrt(), pauli(1)), (1.0 / 3f64.sqrt(), pauli(2))],
                );
                let tau = affine_state(HermitianMatrix::identity(2), &[(1.0 / 3.0, pauli(2)), (0.25, pauli(3))]);
                let a = ObservableSet::new(vec![pauli(1), pauli(3)])?;
                Ok((DensityMatrix::new(rho)?, DensityMatrix::new(tau)?, a))
            }
            Scenario::C4Deterministic => {
                let id = HermitianMatrix::identity(4);
                let rho = affine_state(
                    id.clone(),
                    &[
                        (0.1, pauli_string(&[1, 1])),
                        (0.2, pauli_string(&[2, 0])),
                        (0.3, pauli_string(&[3, 0])),
                    ],
                );
                let tau = affine_state(
                    id,
                    &[
                        (0.3, pauli_string(&[0, 3])),
                        (0.2, pauli_string(&[1, 3])),
                        (0.1, pauli_string(&[3, 0])),
                    ],
                );
                Ok((DensityMatrix::new(rho)?, DensityMatrix::new(tau)?, pauli_product_set(2)))
            }
            Scenario::C2Random | Scenario::C4Random => {
                let d = self.dim();
                let mut rng = RngStream::new(seed, 0).rng();
                let rho = random_state(d, d, &mut rng)?;
                let tau = random_state(d, d, &mut rng)?;
                let a = random_observable_set(d, observables, &mut rng)?;
                Ok((rho, tau, a))
            }
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scenario '{s}'")))
    }
}

/// `(1/d)(I + Σ c_k P_k)`.
fn affine_state(id: HermitianMatrix, terms: &[(f64, HermitianMatrix)]) -> HermitianMatrix {
    let d = id.dim() as f64;
    let sum = terms
        .iter()
        .fold(id, |acc, (c, p)| acc.add(&p.scale(*c)).expect("same dimension"));
    sum.scale(1.0 / d)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub scenario: Scenario,
    pub resolution: usize,
    /// Used by the random scenarios only.
    pub seed: u64,
    /// Size of the random observable set in the random scenarios.
    pub observables: usize,
}

impl SurfaceSpec {
    pub fn new(scenario: Scenario, seed: u64) -> Self {
        Self {
            scenario,
            resolution: 41,
            seed,
            observables: 3,
        }
    }

    /// Grid coordinates along one axis.
    pub fn axis(&self) -> Vec<f64> {
        let h = self.scenario.half_width();
        let n = self.resolution;
        (0..n)
            .map(|i| if n == 1 { 0.0 } else { -h + 2.0 * h * i as f64 / (n - 1) as f64 })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub x: f64,
    pub y: f64,
    /// `None` where `ω(x, y)` is not a state.
    pub gap: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceResult {
    pub spec: SurfaceSpec,
    pub d_rho_tau: f64,
    /// Row-major in `y`, then `x`.
    pub points: Vec<SurfacePoint>,
}

impl SurfaceResult {
    pub fn min_gap(&self) -> Option<f64> {
        self.points.iter().filter_map(|p| p.gap).reduce(f64::min)
    }

    pub fn evaluated(&self) -> usize {
        self.points.iter().filter(|p| p.gap.is_some()).count()
    }
}

/// Triangle gap `d(ρ, ω(x,y)) + d(ω(x,y), τ) − d(ρ, τ)` over a square grid.
pub fn gap_surface(spec: &SurfaceSpec, cfg: &SolverConfig) -> Result<SurfaceResult> {
    if spec.resolution == 0 {
        return Err(Error::InvalidParameter("grid resolution must be positive".into()));
    }
    let (rho, tau, a) = spec.scenario.setup(spec.seed, spec.observables)?;
    let ev = DivergenceEvaluator::new(&a, *cfg);
    let d_rho_tau = ev.divergence(&rho, &tau)?.value;
    let axis = spec.axis();
    let grid: Vec<(f64, f64)> = axis
        .iter()
        .flat_map(|&y| axis.iter().map(move |&x| (x, y)))
        .collect();
    let points = grid
        .into_par_iter()
        .map(|(x, y)| {
            let h = spec.scenario.omega(x, y);
            if h.min_eigenvalue() < -ADMISSIBLE_TOL {
                return Ok(SurfacePoint { x, y, gap: None });
            }
            let at = |e: Error| e.context(format!("grid point ({x}, {y})"));
            let omega = DensityMatrix::new(h).map_err(at)?;
            let ro = ev.divergence(&rho, &omega).map_err(at)?.value;
            let ot = ev.divergence(&omega, &tau).map_err(at)?.value;
            Ok(SurfacePoint {
                x,
                y,
                gap: Some(ro + ot - d_rho_tau),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SurfaceResult {
        spec: *spec,
        d_rho_tau,
        points,
    })
}

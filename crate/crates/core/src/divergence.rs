//! The Wasserstein divergence
//! `d(ρ, ω) = √(D²(ρ, ω) − ½(D²(ρ, ρ) + D²(ω, ω)))` and the triangle gap.

use std::collections::HashMap;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::cost::{build_cost, CostOperator};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, ObservableSet};
use crate::sdp::{InteriorPoint, SdpBackend};
use crate::transport::{self_distance_sq, solve_primal_with, SolverConfig};

/// Squared divergences in `[-CLAMP_WINDOW, 0)` are reported as zero; anything
/// lower is a [`Error::ConcavityViolation`].
pub const CLAMP_WINDOW: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceValue {
    pub value: f64,
    /// `D²(ρ, ω) − ½(D²(ρ, ρ) + D²(ω, ω))` before clamping.
    pub raw_squared: f64,
    pub cross: f64,
    pub self_rho: f64,
    pub self_omega: f64,
}

impl DivergenceValue {
    fn from_parts(cross: f64, self_rho: f64, self_omega: f64) -> Result<Self> {
        let raw_squared = cross - 0.5 * (self_rho + self_omega);
        if raw_squared < -CLAMP_WINDOW {
            return Err(Error::ConcavityViolation(raw_squared));
        }
        Ok(Self {
            value: raw_squared.max(0.0).sqrt(),
            raw_squared,
            cross,
            self_rho,
            self_omega,
        })
    }
}

/// One triangle evaluation `d(ρ,ω) + d(ω,τ) − d(ρ,τ)` with its provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapRecord {
    pub dim: usize,
    pub seed: u64,
    pub sampler: String,
    pub d_rho_omega: f64,
    pub d_omega_tau: f64,
    pub d_rho_tau: f64,
    pub gap: f64,
}

impl GapRecord {
    pub fn new(dim: usize, seed: u64, sampler: impl Into<String>, d_rho_omega: f64, d_omega_tau: f64, d_rho_tau: f64) -> Self {
        Self {
            dim,
            seed,
            sampler: sampler.into(),
            d_rho_omega,
            d_omega_tau,
            d_rho_tau,
            gap: d_rho_omega + d_omega_tau - d_rho_tau,
        }
    }

    pub const CSV_HEADER: [&'static str; 7] = ["dim", "seed", "sampler", "d_rho_omega", "d_omega_tau", "d_rho_tau", "gap"];

    pub fn csv_fields(&self) -> [String; 7] {
        [
            self.dim.to_string(),
            self.seed.to_string(),
            self.sampler.clone(),
            self.d_rho_omega.to_string(),
            self.d_omega_tau.to_string(),
            self.d_rho_tau.to_string(),
            self.gap.to_string(),
        ]
    }
}

/// Evaluates divergences for one fixed cost, caching self-distances by the
/// exact bit pattern of the state.
///
/// For a transposed cost the self-distance has the closed form of
/// [`self_distance_sq`]; otherwise it is solved as a transport problem.
pub struct DivergenceEvaluator<'b> {
    cost: CostOperator,
    cfg: SolverConfig,
    backend: &'b dyn SdpBackend,
    caching: bool,
    cache: RwLock<HashMap<Vec<u64>, f64>>,
}

static DEFAULT_BACKEND: InteriorPoint = InteriorPoint { step_fraction: 0.98 };

impl DivergenceEvaluator<'static> {
    pub fn new(a: &ObservableSet, cfg: SolverConfig) -> Self {
        Self::with_cost(build_cost(a, true), cfg)
    }

    pub fn with_cost(cost: CostOperator, cfg: SolverConfig) -> Self {
        Self::with_backend(cost, cfg, &DEFAULT_BACKEND)
    }
}

impl<'b> DivergenceEvaluator<'b> {
    pub fn with_backend(cost: CostOperator, cfg: SolverConfig, backend: &'b dyn SdpBackend) -> Self {
        Self {
            cost,
            cfg,
            backend,
            caching: true,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Disables the self-distance cache, for workloads that rarely revisit a state.
    pub fn without_cache(mut self) -> Self {
        self.caching = false;
        self
    }

    pub fn cost(&self) -> &CostOperator {
        &self.cost
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn squared_distance(&self, rho: &DensityMatrix, omega: &DensityMatrix) -> Result<f64> {
        Ok(solve_primal_with(self.backend, rho, omega, &self.cost, &self.cfg)?.squared_distance)
    }

    pub fn self_distance(&self, rho: &DensityMatrix) -> Result<f64> {
        if !self.caching {
            return self.compute_self_distance(rho);
        }
        let key = rho.as_hermitian().content_key();
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let v = self.compute_self_distance(rho)?;
        self.cache.write().expect("cache lock").insert(key, v);
        Ok(v)
    }

    fn compute_self_distance(&self, rho: &DensityMatrix) -> Result<f64> {
        if self.cost.is_transposed() {
            self_distance_sq(rho, self.cost.observables())
        } else {
            self.squared_distance(rho, rho)
        }
    }

    pub fn cached_states(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    /// Identical arguments short-circuit to `D²(ρ, ρ)`, so `d(ρ, ρ)` is exactly
    /// zero instead of the square root of solver noise.
    pub fn divergence(&self, rho: &DensityMatrix, omega: &DensityMatrix) -> Result<DivergenceValue> {
        let self_rho = self.self_distance(rho)?;
        if rho == omega {
            return DivergenceValue::from_parts(self_rho, self_rho, self_rho);
        }
        let cross = self.squared_distance(rho, omega)?;
        DivergenceValue::from_parts(cross, self_rho, self.self_distance(omega)?)
    }

    /// `d(ρ,ω) + d(ω,τ) − d(ρ,τ)`, tagged with sampling metadata.
    pub fn triangle(
        &self,
        rho: &DensityMatrix,
        omega: &DensityMatrix,
        tau: &DensityMatrix,
        seed: u64,
        sampler: &str,
    ) -> Result<GapRecord> {
        let ro = self.divergence(rho, omega).map_err(|e| e.context("d(rho, omega)"))?;
        let ot = self.divergence(omega, tau).map_err(|e| e.context("d(omega, tau)"))?;
        let rt = self.divergence(rho, tau).map_err(|e| e.context("d(rho, tau)"))?;
        Ok(GapRecord::new(rho.dim(), seed, sampler, ro.value, ot.value, rt.value))
    }
}

pub fn divergence(rho: &DensityMatrix, omega: &DensityMatrix, a: &ObservableSet, cfg: &SolverConfig) -> Result<DivergenceValue> {
    DivergenceEvaluator::new(a, *cfg).divergence(rho, omega)
}

pub fn triangle_gap(
    rho: &DensityMatrix,
    omega: &DensityMatrix,
    tau: &DensityMatrix,
    a: &ObservableSet,
    cfg: &SolverConfig,
) -> Result<GapRecord> {
    DivergenceEvaluator::new(a, *cfg).triangle(rho, omega, tau, 0, "direct")
}

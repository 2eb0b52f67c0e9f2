use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::divergence::{DivergenceEvaluator, GapRecord};
use crate::error::{Error, Result};
use crate::random::{random_observable_set, random_state, RngStream};
use crate::transport::SolverConfig;

/// Which states of a triplet are drawn pure (rank one).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Anchor {
    #[default]
    Generic,
    PureOmega,
    PureRhoTau,
}

impl Anchor {
    pub fn name(&self) -> &'static str {
        match self {
            Anchor::Generic => "generic",
            Anchor::PureOmega => "pure-omega",
            Anchor::PureRhoTau => "pure-rho-tau",
        }
    }
}

impl std::str::FromStr for Anchor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Anchor::Generic),
            "pure-omega" => Ok(Anchor::PureOmega),
            "pure-rho-tau" => Ok(Anchor::PureRhoTau),
            other => Err(Error::InvalidParameter(format!("unknown anchor '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub dim: usize,
    pub samples: usize,
    pub observables: usize,
    /// Wishart rank of the non-anchored states.
    pub rank: usize,
    pub seed: u64,
    #[serde(default)]
    pub anchor: Anchor,
}

impl SweepSpec {
    pub fn new(dim: usize, seed: u64) -> Self {
        Self {
            dim,
            samples: 4000,
            observables: 3,
            rank: dim,
            seed,
            anchor: Anchor::Generic,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=5).contains(&self.dim) {
            return Err(Error::InvalidParameter(format!("sweep dimension {} outside 2..=5", self.dim)));
        }
        if self.samples == 0 || self.observables == 0 {
            return Err(Error::InvalidParameter("samples and observables must be positive".into()));
        }
        if self.rank == 0 || self.rank > self.dim {
            return Err(Error::InvalidRank {
                rank: self.rank,
                dim: self.dim,
            });
        }
        Ok(())
    }

    /// Tag stored in every record, e.g. `wishart-r3-k3` or `wishart-r3-k3-pure-omega`.
    pub fn sampler_tag(&self) -> String {
        let base = format!("wishart-r{}-k{}", self.rank, self.observables);
        match self.anchor {
            Anchor::Generic => base,
            a => format!("{base}-{}", a.name()),
        }
    }

    /// Sample `index` draws `ρ, ω, τ` and then the observables from stream `index`.
    pub fn sample(&self, index: usize, cfg: &SolverConfig) -> Result<GapRecord> {
        let mut rng = RngStream::new(self.seed, index as u64).rng();
        let rank_for = |pure: bool| if pure { 1 } else { self.rank };
        let (pure_rt, pure_o) = match self.anchor {
            Anchor::Generic => (false, false),
            Anchor::PureOmega => (false, true),
            Anchor::PureRhoTau => (true, false),
        };
        let rho = random_state(self.dim, rank_for(pure_rt), &mut rng)?;
        let omega = random_state(self.dim, rank_for(pure_o), &mut rng)?;
        let tau = random_state(self.dim, rank_for(pure_rt), &mut rng)?;
        let a = random_observable_set(self.dim, self.observables, &mut rng)?;
        DivergenceEvaluator::new(&a, *cfg).triangle(&rho, &omega, &tau, self.seed, &self.sampler_tag())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub min_gap: f64,
    pub argmin: usize,
    /// One record per sample, in sample order.
    pub records: Vec<GapRecord>,
}

/// Minimal triangle gap over i.i.d. random triplets and random costs.
pub fn min_gap_sweep(spec: &SweepSpec, cfg: &SolverConfig) -> Result<SweepResult> {
    spec.validate()?;
    let records = (0..spec.samples)
        .into_par_iter()
        .map(|i| spec.sample(i, cfg).map_err(|e| e.context(format!("sample {i}"))))
        .collect::<Result<Vec<_>>>()?;
    let (argmin, min_gap) = records
        .iter()
        .enumerate()
        .map(|(i, r)| (i, r.gap))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("at least one sample");
    Ok(SweepResult {
        min_gap,
        argmin,
        records,
    })
}

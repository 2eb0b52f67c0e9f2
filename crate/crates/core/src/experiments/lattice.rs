use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::divergence::{DivergenceEvaluator, GapRecord};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, ObservableSet};
use crate::qubit::{from_bloch, BlochVector};
use crate::random::{random_observable_set, random_state, RngStream};
use crate::transport::SolverConfig;

/// Bloch vectors `step·(j, k, l)` with integers `j² + k² + l² ≤ radius_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub step: f64,
    pub radius_bound: i64,
}

impl Default for LatticeSpec {
    fn default() -> Self {
        Self {
            step: 0.1,
            radius_bound: 100,
        }
    }
}

impl LatticeSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || self.radius_bound < 0 {
            return Err(Error::InvalidParameter(format!(
                "lattice needs step > 0 and radius bound ≥ 0 (got {}, {})",
                self.step, self.radius_bound
            )));
        }
        if self.step * self.step * self.radius_bound as f64 > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "lattice with step {} and bound {} leaves the Bloch ball",
                self.step, self.radius_bound
            )));
        }
        Ok(())
    }

    /// Integer points in lexicographic order.
    pub fn points(&self) -> Vec<[i64; 3]> {
        let r = (self.radius_bound as f64).sqrt().floor() as i64 + 1;
        let mut out = Vec::new();
        for j in -r..=r {
            for k in -r..=r {
                for l in -r..=r {
                    if j * j + k * k + l * l <= self.radius_bound {
                        out.push([j, k, l]);
                    }
                }
            }
        }
        out
    }

    pub fn state(&self, p: [i64; 3]) -> Result<DensityMatrix> {
        from_bloch(&BlochVector(p.map(|v| v as f64 * self.step)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticePoint {
    pub index: [i64; 3],
    pub record: GapRecord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeScan {
    pub min_gap: f64,
    pub argmin: [i64; 3],
    pub points: Vec<LatticePoint>,
}

/// Triangle gaps with `ω` ranging over the lattice, `ρ` and `τ` fixed.
pub fn lattice_scan(
    rho: &DensityMatrix,
    tau: &DensityMatrix,
    a: &ObservableSet,
    spec: &LatticeSpec,
    cfg: &SolverConfig,
    seed: u64,
    sampler: &str,
) -> Result<LatticeScan> {
    spec.validate()?;
    if rho.dim() != 2 {
        return Err(Error::WrongDimension(rho.dim()));
    }
    let ev = DivergenceEvaluator::new(a, *cfg);
    let d_rho_tau = ev.divergence(rho, tau).map_err(|e| e.context("d(rho, tau)"))?.value;
    let points = spec
        .points()
        .into_par_iter()
        .map(|p| {
            let at = |e: Error| e.context(format!("lattice point ({}, {}, {})", p[0], p[1], p[2]));
            let omega = spec.state(p).map_err(at)?;
            let ro = ev.divergence(rho, &omega).map_err(at)?.value;
            let ot = ev.divergence(&omega, tau).map_err(at)?.value;
            Ok(LatticePoint {
                index: p,
                record: GapRecord::new(2, seed, sampler, ro, ot, d_rho_tau),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = points
        .iter()
        .min_by(|x, y| x.record.gap.total_cmp(&y.record.gap))
        .ok_or_else(|| Error::InvalidParameter("empty lattice".into()))?;
    Ok(LatticeScan {
        min_gap: best.record.gap,
        argmin: best.index,
        points,
    })
}

/// Random qubit inputs for a lattice table: `pairs` Wishart `(ρ, τ)` pairs
/// and `triples` random observable triples. Pair `n` draws from stream `2n`,
/// triple `m` from stream `2m + 1`.
#[derive(Clone, Debug)]
pub struct LatticeDraw {
    pub pairs: Vec<(DensityMatrix, DensityMatrix)>,
    pub triples: Vec<ObservableSet>,
}

pub fn lattice_draws(seed: u64, pairs: usize, triples: usize) -> Result<LatticeDraw> {
    let pairs = (0..pairs as u64)
        .map(|n| {
            let mut rng = RngStream::new(seed, 2 * n).rng();
            Ok((random_state(2, 2, &mut rng)?, random_state(2, 2, &mut rng)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let triples = (0..triples as u64)
        .map(|m| random_observable_set(2, 3, &mut RngStream::new(seed, 2 * m + 1).rng()))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeDraw { pairs, triples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_lattice_count_matches_enumeration() {
        let pts = LatticeSpec::default().points();
        let mut brute = 0;
        for j in -20i64..=20 {
            for k in -20i64..=20 {
                for l in -20i64..=20 {
                    if j * j + k * k + l * l <= 100 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(pts.len(), brute);
        assert_eq!(pts.len(), 4169);
        let small = LatticeSpec {
            step: 0.2,
            radius_bound: 25,
        };
        assert_eq!(small.points().len(), 515);
    }

    #[test]
    fn lattice_states_are_valid() {
        let spec = LatticeSpec::default();
        for p in spec.points() {
            spec.state(p).unwrap();
        }
        assert!(LatticeSpec { step: 0.2, radius_bound: 100 }.validate().is_err());
    }
}

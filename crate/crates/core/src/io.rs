//! JSON formats for matrices, observable sets and channels, and the string
//! selectors used on the command line.
//!
//! A matrix is `{"dim": n, "entries": [[[re, im], ...], ...]}` in row-major
//! order; an observable set is a JSON array of matrices; a channel is
//! `{"kraus": [matrix, ...]}`.

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexity::ChannelSpec;
use crate::cost::pauli_product_set;
use crate::error::{Error, Result};
use crate::linalg::{pauli, CMatrix, DensityMatrix, HermitianMatrix, ObservableSet};
use crate::random::{random_observable_set, RngStream};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let entries = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self { dim: m.nrows(), entries }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if self.entries.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: self.entries.len(),
            });
        }
        if let Some(row) = self.entries.iter().find(|r| r.len() != self.dim) {
            return Err(Error::NotSquare(self.dim, row.len()));
        }
        Ok(DMatrix::from_fn(self.dim, self.dim, |i, j| {
            let [re, im] = self.entries[i][j];
            Complex64::new(re, im)
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelJson {
    pub kraus: Vec<MatrixJson>,
}

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    serde_json::from_str::<MatrixJson>(text)?.to_matrix()
}

pub fn matrix_to_json(m: &CMatrix) -> Result<String> {
    Ok(serde_json::to_string_pretty(&MatrixJson::from_matrix(m))?)
}

pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    DensityMatrix::from_matrix(parse_matrix(text)?)
}

pub fn parse_observables(text: &str) -> Result<ObservableSet> {
    let list: Vec<MatrixJson> = serde_json::from_str(text)?;
    let observables = list
        .iter()
        .map(|m| HermitianMatrix::new(m.to_matrix()?))
        .collect::<Result<Vec<_>>>()?;
    ObservableSet::new(observables)
}

pub fn observables_to_json(a: &ObservableSet) -> Result<String> {
    let list: Vec<MatrixJson> = a.iter().map(|o| MatrixJson::from_matrix(o.matrix())).collect();
    Ok(serde_json::to_string_pretty(&list)?)
}

pub fn parse_channel(text: &str) -> Result<ChannelSpec> {
    let spec: ChannelJson = serde_json::from_str(text)?;
    let kraus = spec.kraus.iter().map(MatrixJson::to_matrix).collect::<Result<Vec<_>>>()?;
    ChannelSpec::new(kraus)
}

pub fn channel_to_json(phi: &ChannelSpec) -> Result<String> {
    let spec = ChannelJson {
        kraus: phi.kraus().iter().map(MatrixJson::from_matrix).collect(),
    };
    Ok(serde_json::to_string_pretty(&spec)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::from(e).context(path.display().to_string()))
}

fn in_file<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    parse(&read(path)?).map_err(|e| e.context(path.display().to_string()))
}

pub fn load_state(path: &Path) -> Result<DensityMatrix> {
    in_file(path, parse_state)
}

pub fn load_matrix(path: &Path) -> Result<CMatrix> {
    in_file(path, parse_matrix)
}

pub fn load_observables(path: &Path) -> Result<ObservableSet> {
    in_file(path, parse_observables)
}

pub fn load_channel(path: &Path) -> Result<ChannelSpec> {
    in_file(path, parse_channel)
}

/// Observable set named on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CostSelector {
    /// `σ₁, σ₂, σ₃` on a qubit.
    Symmetric,
    /// All non-identity Pauli strings on `n` qubits.
    PauliProducts(usize),
    /// `k` random observables from the given seed and dimension.
    Random(usize),
    File(String),
}

impl CostSelector {
    /// `dim` and `seed` only matter for `random:k`; it draws from stream
    /// `u64::MAX` so it never collides with the per-sample streams.
    pub fn resolve(&self, dim: usize, seed: u64) -> Result<ObservableSet> {
        match self {
            CostSelector::Symmetric => ObservableSet::new(vec![pauli(1), pauli(2), pauli(3)]),
            CostSelector::PauliProducts(n) => {
                if *n == 0 || *n > 3 {
                    return Err(Error::InvalidParameter(format!("pauli-products needs 1 to 3 qubits, got {n}")));
                }
                Ok(pauli_product_set(*n))
            }
            CostSelector::Random(k) => random_observable_set(dim, *k, &mut RngStream::new(seed, u64::MAX).rng()),
            CostSelector::File(path) => load_observables(Path::new(path)),
        }
    }
}

impl std::str::FromStr for CostSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let count = |v: &str| {
            v.parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::InvalidParameter(format!("bad count in cost selector '{s}'")))
        };
        match s.split_once(':') {
            None if s == "symmetric" => Ok(CostSelector::Symmetric),
            Some(("pauli-products", n)) => Ok(CostSelector::PauliProducts(count(n)?)),
            Some(("random", k)) => Ok(CostSelector::Random(count(k)?)),
            Some(("file", p)) if !p.is_empty() => Ok(CostSelector::File(p.to_string())),
            _ => Err(Error::InvalidParameter(format!(
                "unknown cost '{s}' (expected symmetric, pauli-products:n, random:k or file:path)"
            ))),
        }
    }
}

impl std::fmt::Display for CostSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CostSelector::Symmetric => write!(f, "symmetric"),
            CostSelector::PauliProducts(n) => write!(f, "pauli-products:{n}"),
            CostSelector::Random(k) => write!(f, "random:{k}"),
            CostSelector::File(p) => write!(f, "file:{p}"),
        }
    }
}

impl From<CostSelector> for String {
    fn from(c: CostSelector) -> Self {
        c.to_string()
    }
}

impl TryFrom<String> for CostSelector {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Channel named on the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ChannelSelector {
    Identity,
    Unitary(String),
    Depolarizing(f64),
    Dephasing(f64),
    File(String),
}

impl ChannelSelector {
    pub fn resolve(&self, dim: usize) -> Result<ChannelSpec> {
        let qubit_only = |phi: ChannelSpec| {
            if dim != 2 {
                Err(Error::WrongDimension(dim))
            } else {
                Ok(phi)
            }
        };
        let phi = match self {
            ChannelSelector::Identity => ChannelSpec::identity(dim)?,
            ChannelSelector::Unitary(path) => ChannelSpec::unitary(load_matrix(Path::new(path))?)?,
            ChannelSelector::Depolarizing(p) => qubit_only(ChannelSpec::depolarizing(*p)?)?,
            ChannelSelector::Dephasing(p) => qubit_only(ChannelSpec::dephasing(*p)?)?,
            ChannelSelector::File(path) => load_channel(Path::new(path))?,
        };
        if phi.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: phi.dim(),
            });
        }
        Ok(phi)
    }
}

impl std::str::FromStr for ChannelSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let prob = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad probability in channel '{s}'")))
        };
        match s.split_once(':') {
            None if s == "identity" => Ok(ChannelSelector::Identity),
            Some(("unitary", p)) if !p.is_empty() => Ok(ChannelSelector::Unitary(p.to_string())),
            Some(("depolarizing", p)) => Ok(ChannelSelector::Depolarizing(prob(p)?)),
            Some(("dephasing", p)) => Ok(ChannelSelector::Dephasing(prob(p)?)),
            Some(("file", p)) if !p.is_empty() => Ok(ChannelSelector::File(p.to_string())),
            _ => Err(Error::InvalidParameter(format!(
                "unknown channel '{s}' (expected identity, unitary:file, depolarizing:p, dephasing:p or file:path)"
            ))),
        }
    }
}

impl std::fmt::Display for ChannelSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChannelSelector::Identity => write!(f, "identity"),
            ChannelSelector::Unitary(p) => write!(f, "unitary:{p}"),
            ChannelSelector::Depolarizing(p) => write!(f, "depolarizing:{p}"),
            ChannelSelector::Dephasing(p) => write!(f, "dephasing:{p}"),
            ChannelSelector::File(p) => write!(f, "file:{p}"),
        }
    }
}

impl From<ChannelSelector> for String {
    fn from(c: ChannelSelector) -> Self {
        c.to_string()
    }
}

impl TryFrom<String> for ChannelSelector {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = pauli(2).into_inner();
        let text = matrix_to_json(&m).unwrap();
        assert_eq!(parse_matrix(&text).unwrap(), m);
        let literal = r#"{"dim": 2, "entries": [[[0.5, 0], [0, -0.25]], [[0, 0.25], [0.5, 0]]]}"#;
        let rho = parse_state(literal).unwrap();
        assert_eq!(rho.matrix()[(0, 1)], Complex64::new(0.0, -0.25));
    }

    #[test]
    fn malformed_matrices() {
        assert!(parse_matrix(r#"{"dim": 2, "entries": [[[1, 0]]]}"#).is_err());
        assert!(parse_matrix(r#"{"dim": 0, "entries": []}"#).is_err());
        assert!(parse_state(r#"{"dim": 1, "entries": [[[2, 0]]]}"#).is_err());
        assert!(parse_matrix("not json").is_err());
    }

    #[test]
    fn observables_and_channels_round_trip() {
        let a = pauli_product_set(1);
        let back = parse_observables(&observables_to_json(&a).unwrap()).unwrap();
        assert_eq!(back, a);
        let phi = ChannelSpec::depolarizing(0.3).unwrap();
        assert_eq!(parse_channel(&channel_to_json(&phi).unwrap()).unwrap(), phi);
    }

    #[test]
    fn selectors_parse_and_print() {
        for s in ["symmetric", "pauli-products:2", "random:3", "file:a.json"] {
            assert_eq!(s.parse::<CostSelector>().unwrap().to_string(), s);
        }
        for s in ["identity", "unitary:u.json", "depolarizing:0.25", "dephasing:1"] {
            assert_eq!(s.parse::<ChannelSelector>().unwrap().to_string(), s);
        }
        assert!("random:0".parse::<CostSelector>().is_err());
        assert!("pauli".parse::<CostSelector>().is_err());
        assert!("depolarizing:x".parse::<ChannelSelector>().is_err());
        assert!(ChannelSelector::Depolarizing(0.2).resolve(3).is_err());
    }

    #[test]
    fn random_cost_is_seeded() {
        let c = CostSelector::Random(3);
        assert_eq!(c.resolve(3, 8).unwrap(), c.resolve(3, 8).unwrap());
        assert_ne!(c.resolve(3, 8).unwrap(), c.resolve(3, 9).unwrap());
        assert_eq!(CostSelector::Symmetric.resolve(5, 0).unwrap().dim(), 2);
    }
}

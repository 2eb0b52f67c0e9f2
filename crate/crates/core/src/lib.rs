//! Quantum Wasserstein distances of order two: transport SDPs, the
//! divergence built on them, closed forms, bounds and numerical experiments.

// `!(x > 0.0)` deliberately rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod complexity;
pub mod cost;
pub mod divergence;
pub mod experiments;
pub mod error;
pub mod io;
pub mod linalg;
pub mod nelder_mead;
pub mod qubit;
pub mod random;
pub mod sdp;
pub mod transport;

pub use error::{Error, Result};

pub use complexity::{ChannelSpec, ComplexityOptions, ComplexityResult};
pub use cost::CostOperator;
pub use divergence::{DivergenceEvaluator, DivergenceValue, GapRecord};
pub use io::{ChannelSelector, CostSelector};
pub use linalg::{CMatrix, DensityMatrix, HermitianMatrix, ObservableSet};
pub use qubit::BlochVector;
pub use sdp::{SdpStatus, SdpBackend};
pub use transport::{Certificates, Coupling, SolverConfig, TransportResult};

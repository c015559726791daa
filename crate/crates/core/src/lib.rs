//! Workbench for the hardness of sparse PCA.
//!
//! - [`graph`]: graphs, seeded generators, brute-force clique / densest-subgraph oracles.
//! - [`spectral`]: symmetric matrices, top eigenpairs, closed-form gap quantities.
//! - [`spca`]: exact and heuristic sparse PCA, the decision problem, certificates.
//! - [`hardness`]: the clique reduction, the gap decider and the two-graph distinguisher.
//! - [`experiment`], [`suites`]: reproducible sweeps and self-verification.
//!
//! The numeric modules are generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`.

pub mod error;
pub mod experiment;
pub mod graph;
pub mod hardness;
pub mod scalar;
pub mod spca;
pub mod spectral;
pub mod suites;

pub use error::{Error, Result};
pub use graph::{CliqueInstance, Graph, Guard, Support};
pub use hardness::{Declared, DistinguishConfig, DistinguishResult, GapDecision};
pub use scalar::Scalar;
pub use spca::{Settings, SolverKind, SpcaInstance, SpcaSolution, SpcaSolver};
pub use spectral::{CliqueMinusEdgeSpectrum, Eigenpair, GapParams, HongBound, SymmetricMatrix};

pub type SymmetricMatrix64 = SymmetricMatrix<f64>;
pub type SymmetricMatrix32 = SymmetricMatrix<f32>;
pub type Eigenpair64 = Eigenpair<f64>;
pub type SpcaInstance64 = SpcaInstance<f64>;
pub type SpcaSolution64 = SpcaSolution<f64>;
pub type Settings64 = Settings<f64>;
pub type GapParams64 = GapParams<f64>;
pub type GapDecision64 = GapDecision<f64>;
pub type DistinguishConfig64 = DistinguishConfig<f64>;
pub type DistinguishResult64 = DistinguishResult<f64>;

//! Graph-based semi-supervised learning (GSSL) building blocks.
//!
//! The crate covers the full transductive pipeline:
//!
//! 1. [`dataset`]: synthetic benchmark dataset generators (two-Gaussian
//!    clusters, four-Gaussian misleading clusters, a smooth low-dimensional
//!    manifold family) plus CSV ingestion.
//! 2. [`graph`]: pairwise distances, mutual k-nearest-neighbour affinity
//!    graphs, and the derived degree / Laplacian operators.
//! 3. [`algorithms`]: four transductive classifiers over (graph, labels):
//!    harmonic label propagation (GFHF), local and global consistency (LGC),
//!    spectral regression on Laplacian eigenvectors (LE), and greedy graph
//!    transduction with alternating minimization (GTAM).
//! 4. [`noise`]: seeded label sampling and class-flip corruption for
//!    robustness studies.
//!
//! All numeric code is generic over the [`Scalar`] floating-point type;
//! concrete `f64` aliases live at the crate root. Everything is
//! deterministic given its seeds, and all values are immutable after
//! construction, so they can be shared freely across threads.

pub mod algorithms;
pub mod dataset;
mod error;
pub mod graph;
pub mod labels;
pub mod mat;
pub mod noise;
pub mod numerics;
mod scalar;

pub use error::Error;
pub use scalar::Scalar;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

// Concrete f64 aliases for the common case.
pub type Mat64 = mat::Mat<f64>;
pub type Dataset64 = dataset::LabeledDataset<f64>;
pub type Graph64 = graph::AffinityGraph<f64>;
pub type Scores64 = algorithms::ScoreMatrix<f64>;
pub type EigenPairs64 = numerics::EigenPairs<f64>;

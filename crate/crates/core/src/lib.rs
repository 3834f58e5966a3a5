//! Alpha-spectral radius of k-uniform hypergraphs, supertree families and
//! enumeration, and numerical verification suites for extremal results on
//! supertrees.

pub mod canonical;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod harness;
pub mod hypergraph;
pub mod spectral;
pub mod transforms;

pub use canonical::{CanonicalForm, CanonicalKey};
pub use error::{Error, Result};
pub use hypergraph::{EdgeKind, Hypergraph, PathKind, PathTrace, VertexStats};
pub use spectral::{Comparison, Interval, SolverOptions, SpectralResult, WeightVector};

//! Spectral extremal graph theory toolkit: forbidden-subgraph checks, spectral
//! radius computation, core decompositions and exhaustive extremal search on
//! small graphs.

// index loops read better than iterator chains in the dense matrix code
#![allow(clippy::needless_range_loop)]

pub mod canon;
pub mod cli;
pub mod core_eta;
pub mod error;
pub mod families;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod paths;
pub mod patterns;
pub mod random;
pub mod search;
pub mod spectral;

pub use canon::{canonical_form, isomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{graph6, Graph, VertexSet, MAX_VERTICES};
pub use patterns::{PatternSpec, Witness};
pub use spectral::{BoundSpec, SpectralResult};

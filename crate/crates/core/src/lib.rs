//! Exact odd cycle transversals and large independent sets in fullerene
//! graphs, computed as minimum T-joins in the dual triangulation, together
//! with moat-packing certificates, the extremal icosahedral family and the
//! spectral bounds that follow.

pub mod exec;
pub mod goldberg;
pub mod graph;
pub mod moats;
pub mod refine;
pub mod report;
pub mod spectra;
pub mod tjoin;
pub mod transversal;

pub use exec::Execution;
pub use graph::{EmbeddedGraph, FullereneGraph, Triangulation};

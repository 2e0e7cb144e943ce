//! Maximum-weight independent set on annealing hardware with embedding
//! reuse.
//!
//! The pipeline reduces MWIS to a QUBO, minor-embeds the logical graph into
//! a Chimera hardware graph, samples with a simulated annealer, and maps
//! samples back to independent sets. [`bench`] drives the dynamically
//! weighted variant, where one graph is solved under many weight vectors and
//! the embedding is computed once and reused.

pub mod anneal;
pub mod bench;
pub mod bip;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod qubo;
pub mod seed;

pub use error::{BenchError, EmbeddingError, GraphError, ParseError, QuboError, SampleError, TtsError};
pub use graph::{Graph, WeightedGraph};
pub use qubo::{BitVector, Penalty, QuboMatrix};

//! Graph summarization by the minimum description length principle.
//!
//! The pipeline decomposes a graph into candidate subgraphs (five
//! interchangeable clustering methods), labels each candidate with the
//! cheapest vocabulary structure (full clique, star, bipartite core, chain),
//! and assembles a summary model that minimizes total encoded bits, with an
//! optional penalty for edges explained by more than one structure.

pub mod assemble;
pub mod codec;
pub mod decompose;
pub mod graph;
pub mod label;
pub mod pipeline;
pub mod report;
pub mod synth;

pub use graph::Graph;

/// Unified error type for loading, configuration, and numeric failures.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A line of an input file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A node id outside the graph was passed to an operation.
    #[error("node {0} is not in the graph")]
    NodeOutOfRange(u32),

    /// A configuration value is out of its documented domain.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A partition file does not describe the graph it was paired with.
    #[error("partition file error: {0}")]
    PartitionFormat(String),

    /// The eigensolver did not reach the residual tolerance.
    #[error("eigensolver failed to converge: residual {residual:.3e} after {sweeps} sweeps")]
    Convergence { residual: f64, sweeps: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

//! Candidate-subgraph generation: five interchangeable decomposition methods
//! plus ingestion of externally computed partitions.

pub mod kcore;
pub mod louvain;
pub mod multilevel;
pub mod slashburn;
pub mod spectral;

use std::io::{BufRead, BufReader, Read};

use crate::graph::Graph;
use crate::{Error, Result};

pub use kcore::{core_numbers, kcbc_decompose, kcbc_decompose_detailed};
pub use louvain::{louvain_cluster, louvain_cluster_detailed, modularity};
pub use multilevel::multilevel_partition;
pub use slashburn::slashburn_decompose;
pub use spectral::spectral_cluster;

/// A decomposition method selectable at the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SlashBurn,
    Kcbc,
    Louvain,
    Spectral,
    Multilevel,
    /// Partition supplied by an external tool via a partition file.
    External,
}

/// The five built-in methods, in canonical reporting order.
pub const BUILTIN_METHODS: [Method; 5] = [
    Method::SlashBurn,
    Method::Kcbc,
    Method::Louvain,
    Method::Spectral,
    Method::Multilevel,
];

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::SlashBurn => "slashburn",
            Method::Kcbc => "kcbc",
            Method::Louvain => "louvain",
            Method::Spectral => "spectral",
            Method::Multilevel => "multilevel",
            Method::External => "external",
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        match name {
            "slashburn" => Some(Method::SlashBurn),
            "kcbc" => Some(Method::Kcbc),
            "louvain" => Some(Method::Louvain),
            "spectral" => Some(Method::Spectral),
            "multilevel" => Some(Method::Multilevel),
            "external" => Some(Method::External),
            _ => None,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Tuning knobs shared by the decomposition methods.
#[derive(Debug, Clone)]
pub struct DecomposerConfig {
    /// Fraction of the current giant component removed as hubs per
    /// SlashBurn iteration (at least one node per iteration).
    pub hub_fraction: f64,
    /// Cluster count for spectral and multilevel partitioning; when absent,
    /// `default_cluster_count` supplies one from the graph size.
    pub cluster_count: Option<usize>,
    /// Louvain resolution: scales the null-model term of modularity.
    pub resolution: f64,
    /// Seed for every randomized step (scan order, k-means restarts).
    pub seed: u64,
    /// Iteration cap for the outer SlashBurn/Louvain loops.
    pub max_iterations: usize,
    /// Residual tolerance for the spectral eigensolver.
    pub spectral_tolerance: f64,
    /// Sweep cap for the spectral eigensolver before reporting
    /// non-convergence.
    pub spectral_max_sweeps: usize,
}

impl Default for DecomposerConfig {
    fn default() -> Self {
        DecomposerConfig {
            hub_fraction: 0.005,
            cluster_count: None,
            resolution: 0.0001,
            seed: 0,
            max_iterations: 10_000,
            spectral_tolerance: 1e-8,
            spectral_max_sweeps: 5000,
        }
    }
}

impl DecomposerConfig {
    /// Validates the knobs against a graph of `n` nodes.
    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.hub_fraction > 0.0 && self.hub_fraction <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "hub fraction must lie in (0, 1], got {}",
                self.hub_fraction
            )));
        }
        if !(self.resolution > 0.0 && self.resolution.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "resolution must be a positive real, got {}",
                self.resolution
            )));
        }
        if let Some(k) = self.cluster_count {
            if k < 2 {
                return Err(Error::InvalidConfig(format!(
                    "cluster count must be at least 2, got {k}"
                )));
            }
            if k > n {
                return Err(Error::InvalidConfig(format!(
                    "cluster count {k} exceeds node count {n}"
                )));
            }
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "iteration cap must be positive".to_string(),
            ));
        }
        Ok(())
    }

    /// The cluster count to use for a graph of `n` nodes.
    pub fn effective_cluster_count(&self, n: usize) -> usize {
        self.cluster_count.unwrap_or_else(|| default_cluster_count(n))
    }
}

/// Default cluster count: mean cluster size ≈ 100, clamped to [2, 500].
pub fn default_cluster_count(n: usize) -> usize {
    ((n + 99) / 100).clamp(2, 500)
}

/// A node-disjoint assignment of every node to one community.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// `assignment[v]` is the community of internal node v; ids are dense
    /// 0..community_count.
    pub assignment: Vec<u32>,
    pub community_count: usize,
}

impl Partition {
    /// Builds a partition from raw labels, densifying community ids in
    /// first-appearance order.
    pub fn from_labels(labels: &[u32]) -> Partition {
        let mut remap: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut assignment = Vec::with_capacity(labels.len());
        for &raw in labels {
            let next = remap.len() as u32;
            let dense = *remap.entry(raw).or_insert(next);
            assignment.push(dense);
        }
        Partition {
            assignment,
            community_count: remap.len(),
        }
    }

    /// Member lists per community, each sorted ascending.
    pub fn communities(&self) -> Vec<Vec<u32>> {
        let mut groups = vec![Vec::new(); self.community_count];
        for (v, &c) in self.assignment.iter().enumerate() {
            groups[c as usize].push(v as u32);
        }
        groups
    }
}

/// A node set proposed by a decomposition method, with its provenance.
#[derive(Debug, Clone)]
pub struct CandidateSubgraph {
    /// Internal node ids, sorted ascending.
    pub nodes: Vec<u32>,
    pub source_method: Method,
    /// Iteration (SlashBurn/KCBC) or community id (partition methods) the
    /// candidate came from.
    pub source_iteration: usize,
}

/// Runs the selected built-in method end to end, returning its candidates.
pub fn decompose(g: &Graph, method: Method, cfg: &DecomposerConfig) -> Result<Vec<CandidateSubgraph>> {
    cfg.validate(g.node_count())?;
    match method {
        Method::SlashBurn => Ok(slashburn_decompose(g, cfg)),
        Method::Kcbc => Ok(kcbc_decompose(g)),
        Method::Louvain => {
            let p = louvain_cluster(g, cfg);
            Ok(partition_to_candidates(&p, g, Method::Louvain))
        }
        Method::Spectral => {
            let p = spectral_cluster(g, cfg)?;
            Ok(partition_to_candidates(&p, g, Method::Spectral))
        }
        Method::Multilevel => {
            let p = multilevel_partition(g, cfg)?;
            Ok(partition_to_candidates(&p, g, Method::Multilevel))
        }
        Method::External => Err(Error::InvalidConfig(
            "external partitions must be supplied as a partition file".to_string(),
        )),
    }
}

/// One candidate per community of at least 3 nodes, ascending community id.
pub fn partition_to_candidates(p: &Partition, g: &Graph, method: Method) -> Vec<CandidateSubgraph> {
    debug_assert_eq!(p.assignment.len(), g.node_count());
    p.communities()
        .into_iter()
        .enumerate()
        .filter(|(_, members)| members.len() >= 3)
        .map(|(community, members)| CandidateSubgraph {
            nodes: members,
            source_method: method,
            source_iteration: community,
        })
        .collect()
}

/// Parses a partition file: line i holds the community id of internal node i.
pub fn ingest_partition_file<R: Read>(reader: R, g: &Graph) -> Result<Partition> {
    let mut labels: Vec<u32> = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        let id: u32 = token.parse().map_err(|_| {
            Error::PartitionFormat(format!(
                "line {}: expected a community id, got {token:?}",
                idx + 1
            ))
        })?;
        labels.push(id);
    }
    if labels.len() != g.node_count() {
        return Err(Error::PartitionFormat(format!(
            "partition has {} entries but the graph has {} nodes",
            labels.len(),
            g.node_count()
        )));
    }
    Ok(Partition::from_labels(&labels))
}

/// Number of edges crossing between different parts of `p`.
pub fn partition_cut(g: &Graph, p: &Partition) -> usize {
    let mut cut = 0;
    for v in g.nodes() {
        for &w in g.neighbors(v) {
            if w > v && p.assignment[v as usize] != p.assignment[w as usize] {
                cut += 1;
            }
        }
    }
    cut
}

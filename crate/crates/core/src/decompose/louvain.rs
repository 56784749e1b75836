//! Louvain community detection: seeded local moves to the best
//! positive-gain neighbor community, then community contraction, repeated
//! until modularity stops improving. The resolution knob scales the
//! null-model term.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::decompose::{DecomposerConfig, Partition};
use crate::graph::Graph;

/// Weighted working graph for the contraction levels.
struct Level {
    n: usize,
    /// Sorted (neighbor, weight) lists, self-loops excluded.
    adj: Vec<Vec<(u32, f64)>>,
    /// Self-loop weight per node (internal weight of a contracted community).
    self_loop: Vec<f64>,
    /// Total edge weight m: each unordered edge once, self-loops once.
    total_weight: f64,
}

impl Level {
    fn from_graph(g: &Graph) -> Level {
        let n = g.node_count();
        let adj = (0..n as u32)
            .map(|v| g.neighbors(v).iter().map(|&w| (w, 1.0)).collect())
            .collect();
        Level {
            n,
            adj,
            self_loop: vec![0.0; n],
            total_weight: g.edge_count() as f64,
        }
    }

    /// Weighted degree: incident edge weight with self-loops counted twice,
    /// so degrees sum to 2m.
    fn degree(&self, v: usize) -> f64 {
        2.0 * self.self_loop[v] + self.adj[v].iter().map(|&(_, w)| w).sum::<f64>()
    }
}

/// One level of local moves over `order`, repeated until a full pass makes no
/// move (capped at `max_passes`). Returns the community labels and whether
/// any node moved at all.
fn local_phase(level: &Level, order: &[u32], resolution: f64, max_passes: usize) -> (Vec<u32>, bool) {
    let m = level.total_weight;
    let mut comm: Vec<u32> = (0..level.n as u32).collect();
    if m <= 0.0 {
        return (comm, false);
    }
    let mut comm_degree: Vec<f64> = (0..level.n).map(|v| level.degree(v)).collect();
    let mut moved_any = false;
    for _ in 0..max_passes.max(1) {
        let mut moves = 0usize;
        for &v in order {
            let v = v as usize;
            let old = comm[v];
            let k_v = level.degree(v);
            // Edge weight from v to each adjacent community; BTreeMap gives
            // ascending community ids, so equal gains pick the lowest id.
            let mut link: BTreeMap<u32, f64> = BTreeMap::new();
            link.insert(old, 0.0);
            for &(w, wt) in &level.adj[v] {
                *link.entry(comm[w as usize]).or_insert(0.0) += wt;
            }
            // Evaluate gains with v lifted out of its community.
            comm_degree[old as usize] -= k_v;
            let gain = |c: u32, k_vc: f64| {
                k_vc / m - resolution * comm_degree[c as usize] * k_v / (2.0 * m * m)
            };
            let mut best_comm = old;
            let mut best_gain = gain(old, link[&old]);
            for (&c, &k_vc) in &link {
                if c == old {
                    continue;
                }
                let g = gain(c, k_vc);
                if g > best_gain {
                    best_gain = g;
                    best_comm = c;
                }
            }
            comm_degree[best_comm as usize] += k_v;
            if best_comm != old {
                comm[v] = best_comm;
                moves += 1;
                moved_any = true;
            }
        }
        if moves == 0 {
            break;
        }
    }
    (comm, moved_any)
}

/// Modularity of `comm` on the weighted level graph.
fn level_modularity(level: &Level, comm: &[u32], resolution: f64) -> f64 {
    let m = level.total_weight;
    if m <= 0.0 {
        return 0.0;
    }
    let count = comm.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut intra = vec![0.0f64; count];
    let mut degree = vec![0.0f64; count];
    for v in 0..level.n {
        let c = comm[v] as usize;
        degree[c] += level.degree(v);
        intra[c] += level.self_loop[v];
        for &(w, wt) in &level.adj[v] {
            if w as usize > v && comm[w as usize] as usize == c {
                intra[c] += wt;
            }
        }
    }
    (0..count)
        .map(|c| intra[c] / m - resolution * (degree[c] / (2.0 * m)).powi(2))
        .sum()
}

/// Contracts each community of `comm` (dense ids, `count` of them) into a
/// supernode with aggregated edge weights and self-loops.
fn contract(level: &Level, comm: &[u32], count: usize) -> Level {
    let mut self_loop = vec![0.0f64; count];
    let mut maps: Vec<BTreeMap<u32, f64>> = vec![BTreeMap::new(); count];
    for v in 0..level.n {
        let cv = comm[v] as usize;
        self_loop[cv] += level.self_loop[v];
        for &(w, wt) in &level.adj[v] {
            if (w as usize) < v {
                continue;
            }
            let cw = comm[w as usize] as usize;
            if cv == cw {
                self_loop[cv] += wt;
            } else {
                *maps[cv].entry(cw as u32).or_insert(0.0) += wt;
                *maps[cw].entry(cv as u32).or_insert(0.0) += wt;
            }
        }
    }
    let adj: Vec<Vec<(u32, f64)>> = maps
        .into_iter()
        .map(|m| m.into_iter().collect())
        .collect();
    Level {
        n: count,
        adj,
        self_loop,
        total_weight: level.total_weight,
    }
}

/// Full Louvain on `g`, also returning the modularity reached at each level
/// (non-decreasing across contractions).
pub fn louvain_cluster_detailed(g: &Graph, cfg: &DecomposerConfig) -> (Partition, Vec<f64>) {
    let n = g.node_count();
    if n == 0 {
        return (
            Partition {
                assignment: Vec::new(),
                community_count: 0,
            },
            Vec::new(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut level = Level::from_graph(g);
    let mut node_to_comm: Vec<u32> = (0..n as u32).collect();
    let mut level_q = Vec::new();
    for _ in 0..cfg.max_iterations.max(1) {
        let mut order: Vec<u32> = (0..level.n as u32).collect();
        order.shuffle(&mut rng);
        let (comm, moved) = local_phase(&level, &order, cfg.resolution, cfg.max_iterations);
        let dense = Partition::from_labels(&comm);
        level_q.push(level_modularity(&level, &dense.assignment, cfg.resolution));
        for c in node_to_comm.iter_mut() {
            *c = dense.assignment[*c as usize];
        }
        if !moved || dense.community_count == level.n {
            break;
        }
        level = contract(&level, &dense.assignment, dense.community_count);
    }
    (Partition::from_labels(&node_to_comm), level_q)
}

/// Full Louvain on `g`.
pub fn louvain_cluster(g: &Graph, cfg: &DecomposerConfig) -> Partition {
    louvain_cluster_detailed(g, cfg).0
}

/// Modularity of a partition of the (unweighted) graph:
/// Q = Σ_c [ intra_c/m − τ·(degree_c/2m)² ]. Zero for an edgeless graph.
pub fn modularity(g: &Graph, p: &Partition, resolution: f64) -> f64 {
    let m = g.edge_count() as f64;
    if m <= 0.0 {
        return 0.0;
    }
    let mut intra = vec![0.0f64; p.community_count];
    let mut degree = vec![0.0f64; p.community_count];
    for v in g.nodes() {
        let c = p.assignment[v as usize] as usize;
        degree[c] += g.degree(v) as f64;
        for &w in g.neighbors(v) {
            if w > v && p.assignment[w as usize] as usize == c {
                intra[c] += 1.0;
            }
        }
    }
    (0..p.community_count)
        .map(|c| intra[c] / m - resolution * (degree[c] / (2.0 * m)).powi(2))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn unit_resolution() -> DecomposerConfig {
        DecomposerConfig {
            resolution: 1.0,
            ..DecomposerConfig::default()
        }
    }

    #[test]
    fn barbell_modularity_reference_value() {
        let g = synth::barbell(5);
        let p = Partition::from_labels(&[0, 0, 0, 0, 0, 1, 1, 1, 1, 1]);
        // Two communities, 10 intra edges each of m=21, degree sums 21:
        // 2·(10/21 − (21/42)²) = 19/42.
        assert!((modularity(&g, &p, 1.0) - 0.4523809524).abs() < 1e-9);
    }

    #[test]
    fn barbell_recovers_the_two_cliques_at_unit_resolution() {
        let g = synth::barbell(5);
        let (p, levels) = louvain_cluster_detailed(&g, &unit_resolution());
        assert_eq!(p.community_count, 2);
        let comms = p.communities();
        assert_eq!(comms[0], vec![0, 1, 2, 3, 4]);
        assert_eq!(comms[1], vec![5, 6, 7, 8, 9]);
        // Level modularities never decrease.
        for w in levels.windows(2) {
            assert!(w[1] >= w[0] - 1e-9, "levels {levels:?}");
        }
        assert!((levels.last().unwrap() - 0.4523809524).abs() < 1e-9);
    }

    #[test]
    fn disjoint_triangles_each_form_a_community() {
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (6, 7),
                (7, 8),
                (6, 8),
            ],
        );
        let p = louvain_cluster(&g, &unit_resolution());
        assert_eq!(p.community_count, 3);
        assert_eq!(
            p.communities(),
            vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]
        );
    }

    #[test]
    fn tiny_default_resolution_merges_connected_graphs() {
        let g = synth::barbell(5);
        let p = louvain_cluster(&g, &DecomposerConfig::default());
        assert_eq!(p.community_count, 1);
    }

    #[test]
    fn partition_is_valid_and_deterministic() {
        let g = synth::benchmark_graph();
        let cfg = DecomposerConfig {
            seed: 3,
            ..unit_resolution()
        };
        let a = louvain_cluster(&g, &cfg);
        let b = louvain_cluster(&g, &cfg);
        assert_eq!(a, b);
        assert_eq!(a.assignment.len(), g.node_count());
        let max = a.assignment.iter().copied().max().unwrap() as usize;
        assert_eq!(max + 1, a.community_count);
    }

    #[test]
    fn edgeless_graph_stays_singletons() {
        let g = Graph::from_edges(4, &[]);
        let p = louvain_cluster(&g, &unit_resolution());
        assert_eq!(p.community_count, 4);
        assert_eq!(modularity(&g, &p, 1.0), 0.0);
    }
}

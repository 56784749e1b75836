//! Multilevel k-way partitioning: heavy-edge-matching coarsening, greedy
//! graph-growing initial partition, and boundary Kernighan–Lin refinement
//! during uncoarsening. Every tie breaks toward the lowest node id, so the
//! whole pipeline is deterministic without any RNG.

use std::collections::BTreeMap;

use crate::decompose::{DecomposerConfig, Partition};
use crate::graph::Graph;
use crate::{Error, Result};

/// Working graph at one coarsening level: integer edge/node weights keep
/// every comparison exact.
struct CoarseGraph {
    n: usize,
    /// Sorted (neighbor, weight) lists, self-loops dropped.
    adj: Vec<Vec<(u32, u64)>>,
    node_weight: Vec<u64>,
}

impl CoarseGraph {
    fn from_graph(g: &Graph) -> CoarseGraph {
        CoarseGraph {
            n: g.node_count(),
            adj: (0..g.node_count() as u32)
                .map(|v| g.neighbors(v).iter().map(|&w| (w, 1u64)).collect())
                .collect(),
            node_weight: vec![1; g.node_count()],
        }
    }

    fn total_weight(&self) -> u64 {
        self.node_weight.iter().sum()
    }
}

/// Heavy-edge matching: scan nodes ascending, match each unmatched node with
/// its heaviest unmatched neighbor (ties to the lowest id). Returns the
/// fine→coarse map and the coarse node count.
fn heavy_edge_matching(cg: &CoarseGraph) -> (Vec<u32>, usize) {
    let mut coarse_of = vec![u32::MAX; cg.n];
    let mut next = 0u32;
    for v in 0..cg.n {
        if coarse_of[v] != u32::MAX {
            continue;
        }
        let mut mate: Option<(u64, u32)> = None;
        for &(w, wt) in &cg.adj[v] {
            if coarse_of[w as usize] == u32::MAX {
                // Neighbors arrive in ascending id order, so strict > keeps
                // the lowest id among equal weights.
                if mate.map_or(true, |(bw, _)| wt > bw) {
                    mate = Some((wt, w));
                }
            }
        }
        coarse_of[v] = next;
        if let Some((_, w)) = mate {
            coarse_of[w as usize] = next;
        }
        next += 1;
    }
    (coarse_of, next as usize)
}

fn contract(cg: &CoarseGraph, coarse_of: &[u32], coarse_n: usize) -> CoarseGraph {
    let mut node_weight = vec![0u64; coarse_n];
    let mut maps: Vec<BTreeMap<u32, u64>> = vec![BTreeMap::new(); coarse_n];
    for v in 0..cg.n {
        let cv = coarse_of[v] as usize;
        node_weight[cv] += cg.node_weight[v];
        for &(w, wt) in &cg.adj[v] {
            if (w as usize) < v {
                continue;
            }
            let cw = coarse_of[w as usize] as usize;
            if cv != cw {
                *maps[cv].entry(cw as u32).or_insert(0) += wt;
                *maps[cw].entry(cv as u32).or_insert(0) += wt;
            }
        }
    }
    CoarseGraph {
        n: coarse_n,
        adj: maps.into_iter().map(|m| m.into_iter().collect()).collect(),
        node_weight,
    }
}

/// Greedy graph growing: parts are grown one at a time from the lowest-id
/// unassigned seed, always absorbing the unassigned node with the strongest
/// connection to the part (ties to the lowest id), until the part reaches the
/// weight target. Growth never exceeds the 5% balance cap and always leaves
/// at least one node for each part still to come; the last part takes the
/// remainder.
fn greedy_growing(cg: &CoarseGraph, k: usize) -> Vec<u32> {
    let target = (cg.total_weight() + k as u64 - 1) / k as u64;
    let cap = (1.05 * target as f64).ceil() as u64;
    let mut part = vec![u32::MAX; cg.n];
    let mut unassigned = cg.n;
    for p in 0..k - 1 {
        if unassigned == 0 {
            break;
        }
        let reserve = k - 1 - p;
        let seed = (0..cg.n).find(|&v| part[v] == u32::MAX).unwrap();
        part[seed] = p as u32;
        unassigned -= 1;
        let mut weight = cg.node_weight[seed];
        let mut conn = vec![0u64; cg.n];
        for &(w, wt) in &cg.adj[seed] {
            conn[w as usize] += wt;
        }
        while weight < target && unassigned > reserve {
            let mut best: Option<(u64, usize)> = None;
            for v in 0..cg.n {
                if part[v] != u32::MAX || conn[v] == 0 || weight + cg.node_weight[v] > cap {
                    continue;
                }
                if best.map_or(true, |(bc, _)| conn[v] > bc) {
                    best = Some((conn[v], v));
                }
            }
            let chosen = best.map(|(_, v)| v).or_else(|| {
                // Disconnected frontier: jump to the lowest-id node that fits.
                (0..cg.n).find(|&v| part[v] == u32::MAX && weight + cg.node_weight[v] <= cap)
            });
            let Some(v) = chosen else { break };
            part[v] = p as u32;
            unassigned -= 1;
            weight += cg.node_weight[v];
            for &(w, wt) in &cg.adj[v] {
                conn[w as usize] += wt;
            }
        }
    }
    for v in 0..cg.n {
        if part[v] == u32::MAX {
            part[v] = k as u32 - 1;
        }
    }
    part
}

/// Boundary Kernighan–Lin refinement: passes of tentative highest-gain moves
/// (each node moves at most once per pass) keeping the best positive prefix.
/// Moves respect the balance window [min_weight, cap].
fn refine(cg: &CoarseGraph, part: &mut [u32], k: usize, passes: usize) {
    let target = (cg.total_weight() + k as u64 - 1) / k as u64;
    let cap = (1.05 * target as f64).ceil() as u64;
    let min_weight = ((0.95 * target as f64).floor() as u64).max(1);

    let mut part_weight = vec![0u64; k];
    for v in 0..cg.n {
        part_weight[part[v] as usize] += cg.node_weight[v];
    }
    // conn[v][p]: edge weight from v into part p, maintained incrementally.
    let mut conn: Vec<Vec<u64>> = vec![vec![0; k]; cg.n];
    for v in 0..cg.n {
        for &(w, wt) in &cg.adj[v] {
            conn[v][part[w as usize] as usize] += wt;
        }
    }

    for _ in 0..passes {
        let mut locked = vec![false; cg.n];
        let mut seq: Vec<(usize, u32, u32, i64)> = Vec::new();
        let mut cum = 0i64;
        let mut best_cum = 0i64;
        let mut best_len = 0usize;
        let move_cap = cg.n.min(1000);
        while seq.len() < move_cap {
            let mut best: Option<(i64, usize, u32)> = None;
            for v in 0..cg.n {
                if locked[v] {
                    continue;
                }
                let from = part[v] as usize;
                if part_weight[from] < min_weight + cg.node_weight[v] {
                    continue;
                }
                let own = conn[v][from] as i64;
                for (p, &c) in conn[v].iter().enumerate() {
                    if p == from || c == 0 {
                        continue;
                    }
                    if part_weight[p] + cg.node_weight[v] > cap {
                        continue;
                    }
                    let gain = c as i64 - own;
                    if best.map_or(true, |(bg, _, _)| gain > bg) {
                        best = Some((gain, v, p as u32));
                    }
                }
            }
            let Some((gain, v, to)) = best else { break };
            let from = part[v];
            part[v] = to;
            part_weight[from as usize] -= cg.node_weight[v];
            part_weight[to as usize] += cg.node_weight[v];
            for &(w, wt) in &cg.adj[v] {
                conn[w as usize][from as usize] -= wt;
                conn[w as usize][to as usize] += wt;
            }
            locked[v] = true;
            cum += gain;
            seq.push((v, from, to, gain));
            if cum > best_cum {
                best_cum = cum;
                best_len = seq.len();
            }
        }
        // Roll back everything past the best positive prefix.
        for &(v, from, to, _) in seq[best_len..].iter().rev() {
            part[v] = from;
            part_weight[to as usize] -= cg.node_weight[v];
            part_weight[from as usize] += cg.node_weight[v];
            for &(w, wt) in &cg.adj[v] {
                conn[w as usize][to as usize] -= wt;
                conn[w as usize][from as usize] += wt;
            }
        }
        if best_cum <= 0 {
            break;
        }
    }
}

/// METIS-style k-way partitioning substitute.
pub fn multilevel_partition(g: &Graph, cfg: &DecomposerConfig) -> Result<Partition> {
    let n = g.node_count();
    if n == 0 {
        return Ok(Partition {
            assignment: Vec::new(),
            community_count: 0,
        });
    }
    let k = cfg.effective_cluster_count(n);
    if k > n {
        return Err(Error::InvalidConfig(format!(
            "cluster count {k} exceeds node count {n}"
        )));
    }

    // Coarsen until the graph is small relative to k.
    let threshold = 50.max(20 * k);
    let mut levels = vec![CoarseGraph::from_graph(g)];
    let mut maps: Vec<Vec<u32>> = Vec::new();
    while levels.last().unwrap().n > threshold {
        let top = levels.last().unwrap();
        let (coarse_of, coarse_n) = heavy_edge_matching(top);
        if coarse_n == top.n || coarse_n as f64 > 0.98 * top.n as f64 {
            break;
        }
        let contracted = contract(top, &coarse_of, coarse_n);
        maps.push(coarse_of);
        levels.push(contracted);
    }

    let mut part = greedy_growing(levels.last().unwrap(), k);
    refine(levels.last().unwrap(), &mut part, k, 4);

    // Uncoarsen: project the partition one level up and refine its boundary.
    for level_idx in (0..maps.len()).rev() {
        let fine = &levels[level_idx];
        let coarse_of = &maps[level_idx];
        let mut fine_part = vec![0u32; fine.n];
        for v in 0..fine.n {
            fine_part[v] = part[coarse_of[v] as usize];
        }
        refine(fine, &mut fine_part, k, 4);
        part = fine_part;
    }
    Ok(Partition::from_labels(&part))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::partition_cut;
    use crate::synth;

    fn cfg_with_k(k: usize) -> DecomposerConfig {
        DecomposerConfig {
            cluster_count: Some(k),
            ..DecomposerConfig::default()
        }
    }

    #[test]
    fn barbell_cuts_the_bridge() {
        let g = synth::barbell(6);
        let p = multilevel_partition(&g, &cfg_with_k(2)).unwrap();
        assert_eq!(
            p.communities(),
            vec![(0..6).collect::<Vec<u32>>(), (6..12).collect::<Vec<u32>>()]
        );
        assert_eq!(partition_cut(&g, &p), 1);
    }

    #[test]
    fn grid_cuts_straight_and_balanced() {
        let g = synth::grid_graph(4, 4);
        let p = multilevel_partition(&g, &cfg_with_k(2)).unwrap();
        let comms = p.communities();
        assert_eq!(comms[0].len(), 8);
        assert_eq!(comms[1].len(), 8);
        assert_eq!(partition_cut(&g, &p), 4);
    }

    #[test]
    fn k_equal_to_n_isolates_every_node() {
        let g = synth::path_graph(5);
        let p = multilevel_partition(&g, &cfg_with_k(5)).unwrap();
        assert_eq!(p.community_count, 5);
        assert_eq!(p.assignment, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn k_above_n_is_rejected() {
        let g = synth::path_graph(4);
        let err = multilevel_partition(&g, &cfg_with_k(5));
        assert!(matches!(err, Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn coarsened_partition_is_valid_and_balanced() {
        let g = synth::grid_graph(20, 20);
        let p = multilevel_partition(&g, &cfg_with_k(4)).unwrap();
        assert_eq!(p.assignment.len(), 400);
        assert_eq!(p.community_count, 4);
        let sizes: Vec<usize> = p.communities().iter().map(|c| c.len()).collect();
        for &s in &sizes {
            assert!((80..=110).contains(&s), "sizes {sizes:?}");
        }
        // A 4-way cut of the 20×20 grid should stay near two straight cuts.
        assert!(partition_cut(&g, &p) <= 80, "cut {}", partition_cut(&g, &p));
    }

    #[test]
    fn deterministic_without_rng() {
        let g = synth::benchmark_graph();
        let cfg = cfg_with_k(8);
        let a = multilevel_partition(&g, &cfg).unwrap();
        let b = multilevel_partition(&g, &cfg).unwrap();
        assert_eq!(a, b);
    }
}

//! Deterministic graph builders for demos, benchmarks, and tests.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Complete graph on `n` nodes (ids 0..n).
pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Star with hub 0 and spokes 1..=`spokes`.
pub fn star_graph(spokes: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (1..=spokes as u32).map(|s| (0, s)).collect();
    Graph::from_edges(spokes + 1, &edges)
}

/// Path 0–1–…–(n−1).
pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

/// Cycle 0–1–…–(n−1)–0.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 nodes");
    let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v - 1, v)).collect();
    edges.push((n as u32 - 1, 0));
    Graph::from_edges(n, &edges)
}

/// Complete bipartite graph with left side 0..a and right side a..a+b.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a as u32 {
        for v in a as u32..(a + b) as u32 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(a + b, &edges)
}

/// rows×cols grid; node (r, c) has id r·cols + c.
pub fn grid_graph(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    let id = |r: usize, c: usize| (r * cols + c) as u32;
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges)
}

/// Two k-cliques {0..k} and {k..2k} joined by the single bridge edge (0, k).
pub fn barbell(k: usize) -> Graph {
    assert!(k >= 3, "barbell cliques need at least 3 nodes");
    let mut edges = Vec::new();
    for base in [0u32, k as u32] {
        for u in 0..k as u32 {
            for v in u + 1..k as u32 {
                edges.push((base + u, base + v));
            }
        }
    }
    edges.push((0, k as u32));
    Graph::from_edges(2 * k, &edges)
}

/// The 40-node dense demo graph: the union of full cliques on the externally
/// labeled node ranges 1–20, 11–30, and 21–40.
pub fn three_overlapping_cliques() -> Graph {
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for set in overlapping_clique_node_sets() {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_labeled_edges(&pairs)
}

/// External node labels of the three overlapping cliques, in layout order.
pub fn overlapping_clique_node_sets() -> [Vec<u64>; 3] {
    [
        (1..=20).collect(),
        (11..=30).collect(),
        (21..=40).collect(),
    ]
}

/// A planted node set with the vocabulary type it was built as.
#[derive(Debug, Clone)]
pub struct PlantedStructure {
    pub nodes: Vec<u32>,
    pub kind: &'static str,
}

/// 125-node graph of 10 node-disjoint planted structures — 3 cliques of 10,
/// 3 stars of 15, 2 bipartite cores of 5×8, 2 chains of 12 — plus 1% seeded
/// noise edges (1% of the planted edge count, rounded up). Node ids are
/// dense, so internal and external ids coincide.
pub fn planted_vocabulary_graph() -> (Graph, Vec<PlantedStructure>) {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut planted: Vec<PlantedStructure> = Vec::new();
    let mut next = 0u32;
    let take = |count: u32, next: &mut u32| -> Vec<u32> {
        let range: Vec<u32> = (*next..*next + count).collect();
        *next += count;
        range
    };

    for _ in 0..3 {
        let nodes = take(10, &mut next);
        for (i, &u) in nodes.iter().enumerate() {
            for &v in &nodes[i + 1..] {
                edges.push((u, v));
            }
        }
        planted.push(PlantedStructure { nodes, kind: "fc" });
    }
    for _ in 0..3 {
        let nodes = take(15, &mut next);
        for &s in &nodes[1..] {
            edges.push((nodes[0], s));
        }
        planted.push(PlantedStructure { nodes, kind: "st" });
    }
    for _ in 0..2 {
        let nodes = take(13, &mut next);
        for &u in &nodes[..5] {
            for &v in &nodes[5..] {
                edges.push((u, v));
            }
        }
        planted.push(PlantedStructure { nodes, kind: "bc" });
    }
    for _ in 0..2 {
        let nodes = take(12, &mut next);
        for w in nodes.windows(2) {
            edges.push((w[0], w[1]));
        }
        planted.push(PlantedStructure { nodes, kind: "ch" });
    }

    let n = next as usize;
    let planted_edges = edges.len();
    let noise_target = (planted_edges + 99) / 100; // 1%, rounded up
    let mut present: std::collections::HashSet<(u32, u32)> = edges
        .iter()
        .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut added = 0;
    while added < noise_target {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v {
            continue;
        }
        let key = if u < v { (u, v) } else { (v, u) };
        if present.insert(key) {
            edges.push(key);
            added += 1;
        }
    }
    (Graph::from_edges(n, &edges), planted)
}

/// A connected ~3000-node benchmark graph: a seeded preferential-attachment
/// tree (hub-heavy periphery) with 10 planted 8-cliques on disjoint interior
/// node groups.
pub fn benchmark_graph() -> Graph {
    let n = 3000usize;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    // Preferential attachment via the repeated-endpoints trick: sampling a
    // uniform entry of `targets` picks a node proportionally to degree.
    let mut targets: Vec<u32> = vec![0];
    for v in 1..n as u32 {
        let t = targets[rng.gen_range(0..targets.len())];
        edges.push((t, v));
        targets.push(t);
        targets.push(v);
    }
    // 10 disjoint 8-cliques over interior nodes.
    let mut pool: Vec<u32> = (100..n as u32).collect();
    for _ in 0..10 {
        let mut members = Vec::with_capacity(8);
        for _ in 0..8 {
            let idx = rng.gen_range(0..pool.len());
            members.push(pool.swap_remove(idx));
        }
        members.sort_unstable();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random simple graph with exactly `m` distinct edges on `n` nodes.
pub fn gnm_random(n: usize, m: usize, seed: u64) -> Graph {
    let universe = n * (n - 1) / 2;
    assert!(m <= universe, "cannot place {m} edges among {universe} pairs");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: std::collections::HashSet<(u32, u32)> = std::collections::HashSet::new();
    while chosen.len() < m {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v {
            continue;
        }
        chosen.insert(if u < v { (u, v) } else { (v, u) });
    }
    let mut edges: Vec<(u32, u32)> = chosen.into_iter().collect();
    edges.sort_unstable();
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_shapes() {
        assert_eq!(complete_graph(5).edge_count(), 10);
        assert_eq!(star_graph(9).edge_count(), 9);
        assert_eq!(path_graph(7).edge_count(), 6);
        assert_eq!(cycle_graph(6).edge_count(), 6);
        assert_eq!(complete_bipartite(3, 4).edge_count(), 12);
        assert_eq!(grid_graph(4, 4).edge_count(), 24);
        let b = barbell(6);
        assert_eq!(b.node_count(), 12);
        assert_eq!(b.edge_count(), 31);
    }

    #[test]
    fn demo_graph_shape() {
        let g = three_overlapping_cliques();
        assert_eq!(g.node_count(), 40);
        assert_eq!(g.edge_count(), 480);
        assert_eq!(g.connected_components().len(), 1);
    }

    #[test]
    fn planted_graph_shape() {
        let (g, planted) = planted_vocabulary_graph();
        assert_eq!(g.node_count(), 125);
        assert_eq!(planted.len(), 10);
        let planted_edges = 3 * 45 + 3 * 14 + 2 * 40 + 2 * 11;
        assert_eq!(g.edge_count(), planted_edges + 3);
        let kinds: Vec<&str> = planted.iter().map(|p| p.kind).collect();
        assert_eq!(
            kinds,
            ["fc", "fc", "fc", "st", "st", "st", "bc", "bc", "ch", "ch"]
        );
    }

    #[test]
    fn benchmark_graph_is_connected_at_scale() {
        let g = benchmark_graph();
        assert_eq!(g.node_count(), 3000);
        assert_eq!(g.connected_components().len(), 1);
        assert!(g.edge_count() > 3000);
    }

    #[test]
    fn gnm_places_exact_edge_count() {
        let g = gnm_random(30, 60, 5);
        assert_eq!(g.node_count(), 30);
        assert_eq!(g.edge_count(), 60);
        let h = gnm_random(30, 60, 5);
        let mut ge = Vec::new();
        g.write_edge_list(&mut ge).unwrap();
        let mut he = Vec::new();
        h.write_edge_list(&mut he).unwrap();
        assert_eq!(ge, he, "same seed must reproduce the same graph");
    }
}

//! Core numbers and the iterated max-core decomposition: repeatedly extract
//! the connected components of the current maximum core as candidates and
//! delete their internal edges.

use std::collections::BTreeSet;

use crate::decompose::{CandidateSubgraph, Method};
use crate::graph::Graph;

/// Core number of every node: the largest k for which the node survives
/// iterated deletion of all nodes of degree < k. Linear-time bucket peeling.
pub fn core_numbers(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    // `core[v]` starts as the degree and is decremented as neighbors peel
    // away; once v is processed its value is final.
    let mut core: Vec<usize> = (0..n).map(|v| g.degree(v as u32)).collect();
    let max_deg = core.iter().copied().max().unwrap_or(0);

    // vert = nodes sorted by current degree; pos/bin track each node's slot
    // and each degree bucket's start so repositioning is O(1).
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &core {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0u32; n];
    for v in 0..n {
        pos[v] = bin[core[v]];
        vert[pos[v]] = v as u32;
        bin[core[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i] as usize;
        for &w in g.neighbors(v as u32) {
            let w = w as usize;
            if core[w] > core[v] {
                let dw = core[w];
                let pw = pos[w];
                let ps = bin[dw];
                let s = vert[ps] as usize;
                if w != s {
                    vert[ps] = w as u32;
                    vert[pw] = s as u32;
                    pos[w] = ps;
                    pos[s] = pw;
                }
                bin[dw] += 1;
                core[w] -= 1;
            }
        }
    }
    core
}

/// Max-core candidates with the edge set each carried at emission time
/// (the working copy loses edges between iterations, so inducing on the
/// original graph would overstate later candidates).
pub fn kcbc_decompose_detailed(g: &Graph) -> Vec<(CandidateSubgraph, Vec<(u32, u32)>)> {
    let n = g.node_count();
    let mut adj: Vec<BTreeSet<u32>> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut out = Vec::new();
    let mut iteration = 0usize;
    loop {
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for (v, nbrs) in adj.iter().enumerate() {
            for &w in nbrs {
                if w > v as u32 {
                    edges.push((v as u32, w));
                }
            }
        }
        if edges.is_empty() {
            break;
        }
        let work = Graph::from_edges(n, &edges);
        let core = core_numbers(&work);
        let k_max = core.iter().copied().max().unwrap_or(0);
        if k_max <= 1 {
            break;
        }
        let in_set: Vec<bool> = core.iter().map(|&c| c == k_max).collect();

        // Connected components of the induced subgraph on the max-core set,
        // ordered by smallest member.
        let mut seen = vec![false; n];
        for start in 0..n as u32 {
            if !in_set[start as usize] || seen[start as usize] {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = std::collections::VecDeque::from([start]);
            seen[start as usize] = true;
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v as usize] {
                    if in_set[w as usize] && !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            if comp.len() >= 3 {
                let mut comp_edges = Vec::new();
                for &u in &comp {
                    for &w in &adj[u as usize] {
                        if w > u && in_set[w as usize] && comp.binary_search(&w).is_ok() {
                            comp_edges.push((u, w));
                        }
                    }
                }
                out.push((
                    CandidateSubgraph {
                        nodes: comp,
                        source_method: Method::Kcbc,
                        source_iteration: iteration,
                    },
                    comp_edges,
                ));
            }
        }

        // Delete every edge internal to the max-core set; nodes remain and
        // may re-enter later candidates.
        for v in 0..n {
            if !in_set[v] {
                continue;
            }
            let internal: Vec<u32> = adj[v]
                .iter()
                .copied()
                .filter(|&w| in_set[w as usize])
                .collect();
            for w in internal {
                adj[v].remove(&w);
                adj[w as usize].remove(&(v as u32));
            }
        }
        iteration += 1;
    }
    out
}

/// Max-core decomposition, candidates only.
pub fn kcbc_decompose(g: &Graph) -> Vec<CandidateSubgraph> {
    kcbc_decompose_detailed(g)
        .into_iter()
        .map(|(c, _)| c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    #[test]
    fn clique_and_star_core_numbers() {
        assert_eq!(core_numbers(&synth::complete_graph(5)), vec![4; 5]);
        assert_eq!(core_numbers(&synth::star_graph(10)), vec![1; 11]);
    }

    #[test]
    fn nested_core_structure() {
        // K_4 {0..3} with a pendant path 3–4–5: clique nodes core 3, path
        // nodes core 1.
        let g = Graph::from_edges(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)],
        );
        assert_eq!(core_numbers(&g), vec![3, 3, 3, 3, 1, 1]);
    }

    #[test]
    fn two_cliques_and_a_path_emit_only_the_cliques() {
        // Disjoint 5-cliques {0..4}, {5..9} plus a 3-path {10,11,12}.
        let mut edges = Vec::new();
        for base in [0u32, 5] {
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.extend([(10, 11), (11, 12)]);
        let g = Graph::from_edges(13, &edges);

        let detailed = kcbc_decompose_detailed(&g);
        assert_eq!(detailed.len(), 2);
        assert_eq!(detailed[0].0.nodes, vec![0, 1, 2, 3, 4]);
        assert_eq!(detailed[1].0.nodes, vec![5, 6, 7, 8, 9]);
        assert_eq!(detailed[0].0.source_iteration, 0);
        assert_eq!(detailed[1].0.source_iteration, 0);

        // Emission-time edge sets are pairwise disjoint.
        let a: std::collections::HashSet<(u32, u32)> = detailed[0].1.iter().copied().collect();
        let b: std::collections::HashSet<(u32, u32)> = detailed[1].1.iter().copied().collect();
        assert!(a.is_disjoint(&b));
        assert_eq!(a.len(), 10);
        assert_eq!(b.len(), 10);
    }

    #[test]
    fn six_cycle_is_one_candidate() {
        let g = synth::cycle_graph(6);
        let cands = kcbc_decompose(&g);
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].nodes, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn trees_yield_nothing() {
        assert!(kcbc_decompose(&synth::path_graph(8)).is_empty());
        assert!(kcbc_decompose(&synth::star_graph(6)).is_empty());
    }

    #[test]
    fn successive_iterations_peel_distinct_core_levels() {
        // K_5 on {0..4} plus a 6-cycle on {5..10}: the clique (core 4) goes
        // first, the cycle (core 2) on the next iteration.
        let mut edges = Vec::new();
        for i in 0..5u32 {
            for j in i + 1..5 {
                edges.push((i, j));
            }
        }
        for i in 5..10u32 {
            edges.push((i, i + 1));
        }
        edges.push((10, 5));
        let g = Graph::from_edges(11, &edges);
        let cands = kcbc_decompose(&g);
        assert_eq!(cands.len(), 2);
        assert_eq!(cands[0].nodes, vec![0, 1, 2, 3, 4]);
        assert_eq!(cands[0].source_iteration, 0);
        assert_eq!(cands[1].nodes, vec![5, 6, 7, 8, 9, 10]);
        assert_eq!(cands[1].source_iteration, 1);
    }

    #[test]
    fn overlapping_demo_graph_is_one_dense_candidate() {
        let g = synth::three_overlapping_cliques();
        let core = core_numbers(&g);
        assert!(core.iter().all(|&c| c == 19));
        let cands = kcbc_decompose(&g);
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].nodes.len(), 40);
    }

    #[test]
    fn core_numbers_match_naive_peeling_on_random_graphs() {
        for seed in 0..20 {
            let n = 10 + (seed as usize * 7) % 41;
            let m = (n * (n - 1) / 2).min(2 * n);
            let g = synth::gnm_random(n, m, seed);
            assert_eq!(core_numbers(&g), naive_core_numbers(&g), "seed {seed}");
        }
    }

    /// Brute-force oracle: repeatedly delete a minimum-degree node; a node's
    /// core number is the peak minimum degree seen up to its deletion.
    pub(crate) fn naive_core_numbers(g: &Graph) -> Vec<usize> {
        let n = g.node_count();
        let mut alive = vec![true; n];
        let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v as u32)).collect();
        let mut core = vec![0usize; n];
        let mut level = 0usize;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| alive[v])
                .min_by_key(|&v| (deg[v], v))
                .unwrap();
            level = level.max(deg[v]);
            core[v] = level;
            alive[v] = false;
            for &w in g.neighbors(v as u32) {
                if alive[w as usize] {
                    deg[w as usize] -= 1;
                }
            }
        }
        core
    }
}

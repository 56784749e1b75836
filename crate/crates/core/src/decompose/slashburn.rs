//! Hub-removal decomposition: repeatedly slash the highest-degree hubs out of
//! the giant component, emit their egonets and the burned-off components, and
//! recurse on what remains of the giant.

use crate::decompose::{CandidateSubgraph, DecomposerConfig, Method};
use crate::graph::Graph;

/// Connected components of the subgraph induced by `alive`, each sorted
/// ascending, ordered by smallest member.
fn alive_components(g: &Graph, alive: &[bool]) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n as u32 {
        if !alive[start as usize] || seen[start as usize] {
            continue;
        }
        let mut comp = vec![start];
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start as usize] = true;
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if alive[w as usize] && !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn degree_alive(g: &Graph, alive: &[bool], v: u32) -> usize {
    g.neighbors(v).iter().filter(|&&w| alive[w as usize]).count()
}

/// Iterated hub removal. Per iteration: find the giant component of the
/// remaining graph, slash its top ⌈hub_fraction·|giant|⌉ hubs (highest alive
/// degree, ties to the lower id), emit each hub's pre-removal egonet, then
/// emit every non-giant component left after the removal and recurse on the
/// new giant. Stops when the giant shrinks below 3 nodes or the iteration
/// cap is hit. Candidates under 3 nodes are discarded throughout.
pub fn slashburn_decompose(g: &Graph, cfg: &DecomposerConfig) -> Vec<CandidateSubgraph> {
    let n = g.node_count();
    let mut candidates = Vec::new();
    if n == 0 {
        return candidates;
    }
    let mut alive = vec![true; n];
    let mut iteration = 0usize;
    loop {
        let comps = alive_components(g, &alive);
        // Components arrive ordered by smallest member, so a strictly-greater
        // scan breaks size ties toward the smallest-member component.
        let mut giant_ref: Option<&Vec<u32>> = None;
        for c in &comps {
            if giant_ref.map_or(true, |b| c.len() > b.len()) {
                giant_ref = Some(c);
            }
        }
        let Some(giant) = giant_ref.cloned() else { break };
        if giant.len() < 3 || iteration >= cfg.max_iterations {
            break;
        }
        iteration += 1;

        let hub_count = ((cfg.hub_fraction * giant.len() as f64).ceil() as usize).max(1);
        let mut by_degree: Vec<(usize, u32)> = giant
            .iter()
            .map(|&v| (degree_alive(g, &alive, v), v))
            .collect();
        by_degree.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let hubs: Vec<u32> = by_degree
            .iter()
            .take(hub_count.min(giant.len()))
            .map(|&(_, v)| v)
            .collect();

        for &hub in &hubs {
            let mut ego: Vec<u32> = g
                .neighbors(hub)
                .iter()
                .copied()
                .filter(|&w| alive[w as usize])
                .collect();
            ego.push(hub);
            ego.sort_unstable();
            if ego.len() >= 3 {
                candidates.push(CandidateSubgraph {
                    nodes: ego,
                    source_method: Method::SlashBurn,
                    source_iteration: iteration,
                });
            }
        }

        for &hub in &hubs {
            alive[hub as usize] = false;
        }

        let after = alive_components(g, &alive);
        let mut new_giant: Option<&Vec<u32>> = None;
        for c in &after {
            if new_giant.map_or(true, |b| c.len() > b.len()) {
                new_giant = Some(c);
            }
        }
        let Some(new_giant) = new_giant else { break };
        for c in &after {
            if !std::ptr::eq(c, new_giant) && c.len() >= 3 {
                candidates.push(CandidateSubgraph {
                    nodes: c.clone(),
                    source_method: Method::SlashBurn,
                    source_iteration: iteration,
                });
            }
        }
        // Recurse on the giant only: everything else was just emitted (or is
        // too small to matter).
        let keep: std::collections::HashSet<u32> = new_giant.iter().copied().collect();
        for v in 0..n as u32 {
            if alive[v as usize] && !keep.contains(&v) {
                alive[v as usize] = false;
            }
        }
    }
    candidates
}

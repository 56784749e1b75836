//! Summary assembly: rank labeled candidates by encoding benefit and select
//! the final model with the Top-10 or Greedy'nForget heuristic, under plain
//! or overlap-aware accounting.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};

use crate::codec::{self, cell_key, CostBreakdown, COST_EPSILON};
use crate::graph::Graph;
use crate::label::{LabeledCandidate, Structure};
use crate::report::format_sig;
use crate::{Error, Result};

/// Selection heuristic for assembling the summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heuristic {
    Top10,
    Greedy,
}

impl Heuristic {
    pub fn name(&self) -> &'static str {
        match self {
            Heuristic::Top10 => "top10",
            Heuristic::Greedy => "greedy",
        }
    }

    pub fn from_name(name: &str) -> Option<Heuristic> {
        match name {
            "top10" => Some(Heuristic::Top10),
            "greedy" => Some(Heuristic::Greedy),
            _ => None,
        }
    }
}

/// A selected summary: structures in selection order plus its cost.
#[derive(Debug, Clone)]
pub struct Model {
    pub structures: Vec<Structure>,
    pub heuristic: Heuristic,
    pub overlap_aware: bool,
    pub breakdown: CostBreakdown,
}

/// Incremental per-cell cover counts, so Greedy'nForget can add and remove a
/// structure in O(implied edges) instead of re-walking the whole model.
#[derive(Debug, Default)]
pub struct CoverTracker {
    counts: HashMap<u64, u32>,
    covered_cells: usize,
    covered_edges: usize,
    overlap_entries: usize,
    overlap_count_bits: f64,
}

impl CoverTracker {
    pub fn new() -> CoverTracker {
        CoverTracker::default()
    }

    pub fn add(&mut self, s: &Structure, g: &Graph) {
        s.for_each_implied_edge(|u, v| {
            let count = self.counts.entry(cell_key(u, v)).or_insert(0);
            *count += 1;
            match *count {
                1 => {
                    self.covered_cells += 1;
                    if g.has_edge(u, v) {
                        self.covered_edges += 1;
                    }
                }
                2 => {
                    self.overlap_entries += 1;
                    self.overlap_count_bits += codec::universal_int_cost(2);
                }
                c => {
                    self.overlap_count_bits += codec::universal_int_cost(u64::from(c))
                        - codec::universal_int_cost(u64::from(c - 1));
                }
            }
        });
    }

    pub fn remove(&mut self, s: &Structure, g: &Graph) {
        s.for_each_implied_edge(|u, v| {
            let key = cell_key(u, v);
            let count = self.counts.get_mut(&key).expect("removing uncovered cell");
            *count -= 1;
            match *count {
                0 => {
                    self.counts.remove(&key);
                    self.covered_cells -= 1;
                    if g.has_edge(u, v) {
                        self.covered_edges -= 1;
                    }
                }
                1 => {
                    self.overlap_entries -= 1;
                    self.overlap_count_bits -= codec::universal_int_cost(2);
                }
                c => {
                    self.overlap_count_bits -= codec::universal_int_cost(u64::from(c + 1))
                        - codec::universal_int_cost(u64::from(c));
                }
            }
        });
    }

    /// Total cost implied by the tracked cover state plus the given summed
    /// structure bits; mirrors the batch computation bit for bit.
    pub fn breakdown(
        &self,
        g: &Graph,
        structure_bits: f64,
        structure_count: usize,
        overlap_aware: bool,
    ) -> CostBreakdown {
        let universe = g.pair_universe();
        let model = structure_bits + codec::model_overhead(structure_count);
        let error = codec::error_cost(self.covered_cells, self.covered_cells - self.covered_edges)
            + codec::error_cost(
                universe - self.covered_cells,
                g.edge_count() - self.covered_edges,
            );
        let overlap = if overlap_aware {
            codec::overlap_cost(universe, self.overlap_entries, self.overlap_count_bits)
        } else {
            0.0
        };
        CostBreakdown::new(model, error, overlap)
    }
}

/// Cost of describing the graph with no structures at all.
pub fn empty_model_cost(g: &Graph) -> CostBreakdown {
    codec::total_cost(g, &[], false)
}

/// Candidate indices ordered by decreasing benefit; the sort is stable, so
/// equal benefits keep their original candidate order.
fn benefit_order(labeled: &[LabeledCandidate]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..labeled.len()).collect();
    order.sort_by(|&a, &b| {
        labeled[b]
            .benefit_bits
            .partial_cmp(&labeled[a].benefit_bits)
            .expect("benefits are finite")
    });
    order
}

/// Up to ten positive-benefit structures, best first.
pub fn select_top10(g: &Graph, labeled: &[LabeledCandidate], overlap_aware: bool) -> Model {
    let structures: Vec<Structure> = benefit_order(labeled)
        .into_iter()
        .filter(|&i| labeled[i].benefit_bits > COST_EPSILON)
        .take(10)
        .map(|i| labeled[i].structure.clone())
        .collect();
    let breakdown = codec::total_cost(g, &structures, overlap_aware);
    Model {
        structures,
        heuristic: Heuristic::Top10,
        overlap_aware,
        breakdown,
    }
}

/// One decision in the Greedy'nForget trace.
#[derive(Debug, Clone, Copy)]
pub struct GreedyStep {
    /// Index into the labeled-candidate slice the heuristic consumed.
    pub candidate_index: usize,
    /// Total bits the model would cost with this candidate included.
    pub tentative_total: f64,
    pub kept: bool,
}

/// Greedy'nForget with the full decision trace: candidates are visited in
/// decreasing-benefit order and kept only while the total strictly drops.
pub fn select_greedy_nforget_traced(
    g: &Graph,
    labeled: &[LabeledCandidate],
    overlap_aware: bool,
) -> (Model, Vec<GreedyStep>) {
    let n = g.node_count();
    let mut tracker = CoverTracker::new();
    let mut structures: Vec<Structure> = Vec::new();
    let mut structure_bits = 0.0;
    let mut current_total = empty_model_cost(g).total_bits;
    let mut steps = Vec::with_capacity(labeled.len());

    for i in benefit_order(labeled) {
        let s = &labeled[i].structure;
        let s_bits = codec::structure_cost(s, n);
        tracker.add(s, g);
        let tentative = tracker
            .breakdown(g, structure_bits + s_bits, structures.len() + 1, overlap_aware)
            .total_bits;
        let kept = tentative < current_total - COST_EPSILON;
        if kept {
            structures.push(s.clone());
            structure_bits += s_bits;
            current_total = tentative;
        } else {
            tracker.remove(s, g);
        }
        steps.push(GreedyStep {
            candidate_index: i,
            tentative_total: tentative,
            kept,
        });
    }

    let breakdown = codec::total_cost(g, &structures, overlap_aware);
    debug_assert!(
        (breakdown.total_bits - current_total).abs() < 1e-6,
        "incremental total {current_total} drifted from batch {}",
        breakdown.total_bits
    );
    (
        Model {
            structures,
            heuristic: Heuristic::Greedy,
            overlap_aware,
            breakdown,
        },
        steps,
    )
}

/// Greedy'nForget selection.
pub fn select_greedy_nforget(g: &Graph, labeled: &[LabeledCandidate], overlap_aware: bool) -> Model {
    select_greedy_nforget_traced(g, labeled, overlap_aware).0
}

fn external_ids(g: &Graph, nodes: &[u32]) -> String {
    nodes
        .iter()
        .map(|&v| g.external_id(v).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Writes the model file: a cost header comment, then one structure per line
/// in selection order, using external node labels.
pub fn write_model<W: Write>(mut w: W, g: &Graph, model: &Model) -> Result<()> {
    writeln!(
        w,
        "# total_bits={} model_bits={} error_bits={} overlap_bits={}",
        format_sig(model.breakdown.total_bits),
        format_sig(model.breakdown.model_bits),
        format_sig(model.breakdown.error_bits),
        format_sig(model.breakdown.overlap_bits),
    )?;
    for s in &model.structures {
        match s {
            Structure::FullClique { nodes } => writeln!(w, "fc {}", external_ids(g, nodes))?,
            Structure::Star { hub, spokes } => writeln!(
                w,
                "st {}, {}",
                g.external_id(*hub),
                external_ids(g, spokes)
            )?,
            Structure::BipartiteCore { left, right } => writeln!(
                w,
                "bc {}, {}",
                external_ids(g, left),
                external_ids(g, right)
            )?,
            Structure::Chain { nodes } => writeln!(w, "ch {}", external_ids(g, nodes))?,
        }
    }
    Ok(())
}

fn parse_ids(g: &Graph, text: &str, line: usize) -> Result<Vec<u32>> {
    text.split_whitespace()
        .map(|tok| {
            let ext: u64 = tok.parse().map_err(|_| Error::Parse {
                line,
                message: format!("expected a node label, got {tok:?}"),
            })?;
            g.internal_id(ext).ok_or_else(|| Error::Parse {
                line,
                message: format!("node label {ext} is not in the graph"),
            })
        })
        .collect()
}

/// Parses a model file back into structures (internal ids) and the header's
/// cost breakdown.
pub fn parse_model<R: Read>(reader: R, g: &Graph) -> Result<(Vec<Structure>, CostBreakdown)> {
    let mut lines = BufReader::new(reader).lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    let mut costs = [0.0f64; 4];
    let names = ["total_bits", "model_bits", "error_bits", "overlap_bits"];
    let tokens: Vec<&str> = header.trim_start_matches('#').split_whitespace().collect();
    if tokens.len() != 4 {
        return Err(Error::Parse {
            line: 1,
            message: "model header must carry the four cost fields".to_string(),
        });
    }
    for ((slot, token), name) in costs.iter_mut().zip(&tokens).zip(names) {
        *slot = token
            .strip_prefix(name)
            .and_then(|rest| rest.strip_prefix('='))
            .and_then(|v| v.parse::<f64>().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("bad header field {token:?}, expected {name}=<bits>"),
            })?;
    }

    let mut structures = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (kind, rest) = trimmed.split_once(' ').ok_or_else(|| Error::Parse {
            line: line_no,
            message: "structure line needs a kind and node labels".to_string(),
        })?;
        let structure = match kind {
            "fc" => Structure::FullClique {
                nodes: parse_ids(g, rest, line_no)?,
            },
            "st" => {
                let (hub, spokes) = rest.split_once(',').ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: "star line needs `hub, spokes`".to_string(),
                })?;
                let hub_ids = parse_ids(g, hub, line_no)?;
                if hub_ids.len() != 1 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "star line needs exactly one hub".to_string(),
                    });
                }
                Structure::Star {
                    hub: hub_ids[0],
                    spokes: parse_ids(g, spokes, line_no)?,
                }
            }
            "bc" => {
                let (left, right) = rest.split_once(',').ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: "bipartite-core line needs `A, B`".to_string(),
                })?;
                Structure::BipartiteCore {
                    left: parse_ids(g, left, line_no)?,
                    right: parse_ids(g, right, line_no)?,
                }
            }
            "ch" => Structure::Chain {
                nodes: parse_ids(g, rest, line_no)?,
            },
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown structure kind {other:?}"),
                })
            }
        };
        structures.push(structure);
    }
    Ok((
        structures,
        CostBreakdown {
            model_bits: costs[1],
            error_bits: costs[2],
            overlap_bits: costs[3],
            total_bits: costs[0],
        },
    ))
}

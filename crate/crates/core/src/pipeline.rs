//! End-to-end orchestration: decompose → label → assemble → report, with
//! per-stage wall-clock accounting.

use std::time::Instant;

use crate::assemble::{self, Heuristic, Model};
use crate::decompose::{self, CandidateSubgraph, DecomposerConfig, Method, Partition};
use crate::graph::Graph;
use crate::label::{label_subgraph, LabeledCandidate, Structure};
use crate::report::{self, round_sig, SummaryReport, TypeHistogram};
use crate::Result;

/// Where candidates come from: a built-in method or an ingested partition.
pub enum CandidateSource {
    Method(Method),
    Partition(Partition),
}

impl CandidateSource {
    pub fn method_name(&self) -> &'static str {
        match self {
            CandidateSource::Method(m) => m.name(),
            CandidateSource::Partition(_) => Method::External.name(),
        }
    }
}

/// Decomposed and labeled candidates, reusable across several assembly
/// configurations, with the stage timings that produced them.
pub struct StagedCandidates {
    pub candidates: Vec<CandidateSubgraph>,
    pub labeled: Vec<LabeledCandidate>,
    pub decompose_seconds: f64,
    pub label_seconds: f64,
}

/// Runs candidate generation and labeling once.
pub fn decompose_and_label(
    g: &Graph,
    source: &CandidateSource,
    cfg: &DecomposerConfig,
) -> Result<StagedCandidates> {
    let started = Instant::now();
    let candidates = match source {
        CandidateSource::Method(m) => decompose::decompose(g, *m, cfg)?,
        CandidateSource::Partition(p) => {
            decompose::partition_to_candidates(p, g, Method::External)
        }
    };
    let decompose_seconds = started.elapsed().as_secs_f64();

    let started = Instant::now();
    let labeled = candidates
        .iter()
        .map(|c| label_subgraph(g, &c.nodes))
        .collect();
    let label_seconds = started.elapsed().as_secs_f64();

    Ok(StagedCandidates {
        candidates,
        labeled,
        decompose_seconds,
        label_seconds,
    })
}

/// Selects a model from staged candidates and assembles the full report.
/// Runtime columns are zeroed unless `include_timings` is set, keeping
/// default outputs byte-identical across runs.
pub fn assemble_and_report(
    g: &Graph,
    source_name: &str,
    staged: &StagedCandidates,
    heuristic: Heuristic,
    overlap_aware: bool,
    seed: u64,
    include_timings: bool,
) -> (Model, SummaryReport) {
    let started = Instant::now();
    let model = match heuristic {
        Heuristic::Top10 => assemble::select_top10(g, &staged.labeled, overlap_aware),
        Heuristic::Greedy => assemble::select_greedy_nforget(g, &staged.labeled, overlap_aware),
    };
    let assemble_seconds = started.elapsed().as_secs_f64();

    let baseline = assemble::empty_model_cost(g);
    let pre_structures: Vec<Structure> = staged
        .labeled
        .iter()
        .map(|l| l.structure.clone())
        .collect();
    let (node_pre, edge_pre) = report::coverage(g, &pre_structures);
    let (node_post, edge_post) = report::coverage(g, &model.structures);

    let report = SummaryReport {
        method: source_name.to_string(),
        heuristic: heuristic.name().to_string(),
        overlap_aware,
        seed,
        total_bits: round_sig(model.breakdown.total_bits),
        model_bits: round_sig(model.breakdown.model_bits),
        error_bits: round_sig(model.breakdown.error_bits),
        overlap_bits: round_sig(model.breakdown.overlap_bits),
        baseline_bits: round_sig(baseline.total_bits),
        compression_rate: round_sig(report::compression_rate(
            model.breakdown.total_bits,
            baseline.total_bits,
        )),
        node_coverage_pre: round_sig(node_pre),
        node_coverage_post: round_sig(node_post),
        edge_coverage_pre: round_sig(edge_pre),
        edge_coverage_post: round_sig(edge_post),
        type_histogram_pre: TypeHistogram::from_structures(&pre_structures),
        type_histogram_post: TypeHistogram::from_structures(&model.structures),
        runtime_decompose_s: if include_timings {
            round_sig(staged.decompose_seconds)
        } else {
            0.0
        },
        runtime_label_s: if include_timings {
            round_sig(staged.label_seconds)
        } else {
            0.0
        },
        runtime_assemble_s: if include_timings {
            round_sig(assemble_seconds)
        } else {
            0.0
        },
    };
    (model, report)
}

/// Full single-configuration run.
pub fn run(
    g: &Graph,
    source: &CandidateSource,
    cfg: &DecomposerConfig,
    heuristic: Heuristic,
    overlap_aware: bool,
    include_timings: bool,
) -> Result<(Model, SummaryReport)> {
    let staged = decompose_and_label(g, source, cfg)?;
    Ok(assemble_and_report(
        g,
        source.method_name(),
        &staged,
        heuristic,
        overlap_aware,
        cfg.seed,
        include_timings,
    ))
}

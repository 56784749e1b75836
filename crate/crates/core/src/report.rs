//! Run metrics and their serialization: compression rate, coverage ratios,
//! structure-type histograms, and CSV/JSON reports with floats fixed at six
//! significant digits so outputs are byte-stable across runs and platforms.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::codec::cell_key;
use crate::graph::Graph;
use crate::label::Structure;
use crate::{Error, Result};

/// Renders `x` with six significant digits ("0" for zero). Used for every
/// float that reaches a file, so equal values always serialize identically.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let decimals = (5 - x.abs().log10().floor() as i64).max(0) as usize;
    format!("{x:.decimals$}")
}

/// `x` rounded to what its serialized form parses back to.
pub fn round_sig(x: f64) -> f64 {
    format_sig(x).parse().expect("format_sig emits valid floats")
}

/// Structure counts in the fixed vocabulary order fc, st, bc, ch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeHistogram {
    pub fc: usize,
    pub st: usize,
    pub bc: usize,
    pub ch: usize,
}

impl TypeHistogram {
    pub fn from_structures(structures: &[Structure]) -> TypeHistogram {
        let mut h = TypeHistogram::default();
        for s in structures {
            match s.kind() {
                "fc" => h.fc += 1,
                "st" => h.st += 1,
                "bc" => h.bc += 1,
                _ => h.ch += 1,
            }
        }
        h
    }

    pub fn total(&self) -> usize {
        self.fc + self.st + self.bc + self.ch
    }
}

/// Everything one (method, heuristic, overlap) configuration reports.
/// Float fields are stored already rounded to six significant digits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub method: String,
    pub heuristic: String,
    pub overlap_aware: bool,
    pub seed: u64,
    pub total_bits: f64,
    pub model_bits: f64,
    pub error_bits: f64,
    pub overlap_bits: f64,
    pub baseline_bits: f64,
    /// Final total over the empty-model baseline, as a percentage; above 100
    /// means the summary costs more than no summary at all.
    pub compression_rate: f64,
    pub node_coverage_pre: f64,
    pub node_coverage_post: f64,
    pub edge_coverage_pre: f64,
    pub edge_coverage_post: f64,
    pub type_histogram_pre: TypeHistogram,
    pub type_histogram_post: TypeHistogram,
    pub runtime_decompose_s: f64,
    pub runtime_label_s: f64,
    pub runtime_assemble_s: f64,
}

/// Final cost over baseline as a percentage (100 = no gain, lower is better).
pub fn compression_rate(final_bits: f64, baseline_bits: f64) -> f64 {
    assert!(
        baseline_bits > 0.0,
        "baseline must be positive, got {baseline_bits}"
    );
    100.0 * (final_bits / baseline_bits)
}

/// Fraction of nodes touched by any structure and fraction of actual edges
/// implied by at least one structure.
pub fn coverage(g: &Graph, structures: &[Structure]) -> (f64, f64) {
    if g.node_count() == 0 {
        return (0.0, 0.0);
    }
    let mut nodes: HashSet<u32> = HashSet::new();
    let mut explained: HashSet<u64> = HashSet::new();
    for s in structures {
        for v in s.member_nodes() {
            nodes.insert(v);
        }
        s.for_each_implied_edge(|u, v| {
            if g.has_edge(u, v) {
                explained.insert(cell_key(u, v));
            }
        });
    }
    let node_ratio = nodes.len() as f64 / g.node_count() as f64;
    let edge_ratio = if g.edge_count() == 0 {
        0.0
    } else {
        explained.len() as f64 / g.edge_count() as f64
    };
    (node_ratio, edge_ratio)
}

const CSV_COLUMNS: [&str; 26] = [
    "method",
    "heuristic",
    "overlap_aware",
    "seed",
    "total_bits",
    "model_bits",
    "error_bits",
    "overlap_bits",
    "baseline_bits",
    "compression_rate",
    "node_coverage_pre",
    "node_coverage_post",
    "edge_coverage_pre",
    "edge_coverage_post",
    "fc_pre",
    "st_pre",
    "bc_pre",
    "ch_pre",
    "fc_post",
    "st_post",
    "bc_post",
    "ch_post",
    "runtime_decompose_s",
    "runtime_label_s",
    "runtime_assemble_s",
    "error",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

impl SummaryReport {
    pub fn csv_row(&self) -> String {
        let h_pre = &self.type_histogram_pre;
        let h_post = &self.type_histogram_post;
        [
            self.method.clone(),
            self.heuristic.clone(),
            self.overlap_aware.to_string(),
            self.seed.to_string(),
            format_sig(self.total_bits),
            format_sig(self.model_bits),
            format_sig(self.error_bits),
            format_sig(self.overlap_bits),
            format_sig(self.baseline_bits),
            format_sig(self.compression_rate),
            format_sig(self.node_coverage_pre),
            format_sig(self.node_coverage_post),
            format_sig(self.edge_coverage_pre),
            format_sig(self.edge_coverage_post),
            h_pre.fc.to_string(),
            h_pre.st.to_string(),
            h_pre.bc.to_string(),
            h_pre.ch.to_string(),
            h_post.fc.to_string(),
            h_post.st.to_string(),
            h_post.bc.to_string(),
            h_post.ch.to_string(),
            format_sig(self.runtime_decompose_s),
            format_sig(self.runtime_label_s),
            format_sig(self.runtime_assemble_s),
            String::new(),
        ]
        .join(",")
    }

    pub fn from_csv_row(row: &str) -> Result<SummaryReport> {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != CSV_COLUMNS.len() {
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "expected {} CSV fields, got {}",
                    CSV_COLUMNS.len(),
                    fields.len()
                ),
            });
        }
        let parse_f = |idx: usize| -> Result<f64> {
            fields[idx].parse().map_err(|_| Error::Parse {
                line: 0,
                message: format!("bad float in column {}: {:?}", CSV_COLUMNS[idx], fields[idx]),
            })
        };
        let parse_u = |idx: usize| -> Result<usize> {
            fields[idx].parse().map_err(|_| Error::Parse {
                line: 0,
                message: format!("bad count in column {}: {:?}", CSV_COLUMNS[idx], fields[idx]),
            })
        };
        Ok(SummaryReport {
            method: fields[0].to_string(),
            heuristic: fields[1].to_string(),
            overlap_aware: fields[2].parse().map_err(|_| Error::Parse {
                line: 0,
                message: format!("bad flag: {:?}", fields[2]),
            })?,
            seed: fields[3].parse().map_err(|_| Error::Parse {
                line: 0,
                message: format!("bad seed: {:?}", fields[3]),
            })?,
            total_bits: parse_f(4)?,
            model_bits: parse_f(5)?,
            error_bits: parse_f(6)?,
            overlap_bits: parse_f(7)?,
            baseline_bits: parse_f(8)?,
            compression_rate: parse_f(9)?,
            node_coverage_pre: parse_f(10)?,
            node_coverage_post: parse_f(11)?,
            edge_coverage_pre: parse_f(12)?,
            edge_coverage_post: parse_f(13)?,
            type_histogram_pre: TypeHistogram {
                fc: parse_u(14)?,
                st: parse_u(15)?,
                bc: parse_u(16)?,
                ch: parse_u(17)?,
            },
            type_histogram_post: TypeHistogram {
                fc: parse_u(18)?,
                st: parse_u(19)?,
                bc: parse_u(20)?,
                ch: parse_u(21)?,
            },
            runtime_decompose_s: parse_f(22)?,
            runtime_label_s: parse_f(23)?,
            runtime_assemble_s: parse_f(24)?,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<SummaryReport> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            line: 0,
            message: format!("bad JSON report: {e}"),
        })
    }
}

/// A CSV row for a configuration that failed: identity columns plus the
/// error message (commas and newlines flattened), numeric columns empty.
pub fn csv_error_row(
    method: &str,
    heuristic: &str,
    overlap_aware: bool,
    seed: u64,
    message: &str,
) -> String {
    let mut fields = vec![
        method.to_string(),
        heuristic.to_string(),
        overlap_aware.to_string(),
        seed.to_string(),
    ];
    fields.extend(std::iter::repeat(String::new()).take(CSV_COLUMNS.len() - 5));
    fields.push(message.replace(['\n', ','], ";"));
    fields.join(",")
}

//! Description-length arithmetic: universal integer codes, structure costs,
//! error and overlap codes, and whole-model totals. All values are bits
//! (base-2 logarithms).
//!
//! The error code splits the cell universe into the modeled area (cells some
//! structure claims) and the unmodeled remainder, and prefix-codes the
//! mismatches of each part separately. A single code over the full universe
//! makes dense graphs nearly free to leave unexplained — the all-ones error
//! matrix degenerates to `log2(universe+1)` bits — which would stop any
//! structure from ever paying for itself on dense inputs.

use std::collections::HashMap;

use crate::graph::Graph;
use crate::label::Structure;

/// Constant of the universal code for positive integers.
pub const UNIVERSAL_PRIOR: f64 = 2.865_064;

/// Number of vocabulary types (fc, st, bc, ch).
pub const VOCABULARY_SIZE: usize = 4;

/// Bit costs within this tolerance are treated as equal.
pub const COST_EPSILON: f64 = 1e-9;

/// Universal code length for a positive integer: the normalizing constant
/// plus the iterated positive log terms log2 z + log2 log2 z + …
///
/// Panics when `z` is zero; the code is defined on positive integers only.
pub fn universal_int_cost(z: u64) -> f64 {
    assert!(z >= 1, "universal integer code needs z ≥ 1, got {z}");
    let mut total = UNIVERSAL_PRIOR.log2();
    let mut term = (z as f64).log2();
    while term > 0.0 {
        total += term;
        term = term.log2();
    }
    total
}

const EXACT_SUM_LIMIT: u64 = 1 << 20;

/// log2 of the binomial coefficient C(n, k).
///
/// Uses an exact log-sum when min(k, n−k) is small enough, and a log-gamma
/// evaluation beyond that, so values stay accurate without overflow for n up
/// to 10^7. Panics when k > n.
pub fn binomial_cost(n: u64, k: u64) -> f64 {
    assert!(k <= n, "binomial index needs k ≤ n, got k={k}, n={n}");
    let k = k.min(n - k);
    if k == 0 {
        return 0.0;
    }
    if k <= EXACT_SUM_LIMIT {
        let mut total = 0.0;
        for i in 0..k {
            total += ((n - i) as f64).log2() - ((i + 1) as f64).log2();
        }
        total
    } else {
        use statrs::function::gamma::ln_gamma;
        let ln2 = std::f64::consts::LN_2;
        (ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0))
            / ln2
    }
}

/// Prefix-code length for marking `errors` cells out of `universe`:
/// a count header plus per-cell optimal prefix codes for marked and unmarked
/// cells. Zero when there is nothing to mark.
pub fn error_cost(universe: usize, errors: usize) -> f64 {
    assert!(
        errors <= universe,
        "error count {errors} exceeds universe {universe}"
    );
    if errors == 0 {
        return 0.0;
    }
    let u = universe as f64;
    let e = errors as f64;
    let rest = (universe - errors) as f64;
    let mut bits = (e + 1.0).log2() + e * (u / e).log2();
    if rest > 0.0 {
        bits += rest * (u / rest).log2();
    }
    bits
}

/// Length of the overlap code: the positions of the multiply-covered cells
/// (same prefix shape as the error code) plus a universal-coded cover count
/// per cell. `count_code_bits` must be the precomputed sum of
/// `universal_int_cost(count)` over all cells with cover count ≥ 2.
pub fn overlap_cost(universe: usize, entries: usize, count_code_bits: f64) -> f64 {
    if entries == 0 {
        return 0.0;
    }
    error_cost(universe, entries) + count_code_bits
}

/// Bits to describe one structure inside a host graph of `n` nodes: a size
/// header plus an index among the node sets of that shape.
pub fn structure_cost(s: &Structure, n: usize) -> f64 {
    let n64 = n as u64;
    assert!(
        s.node_count() <= n,
        "structure spans {} nodes but the graph has {n}",
        s.node_count()
    );
    match s {
        Structure::FullClique { nodes } => {
            let size = nodes.len() as u64;
            universal_int_cost(size) + binomial_cost(n64, size)
        }
        Structure::Star { spokes, .. } => {
            let k = spokes.len() as u64;
            universal_int_cost(k) + (n as f64).log2() + binomial_cost(n64 - 1, k)
        }
        Structure::BipartiteCore { left, right } => {
            let a = left.len() as u64;
            let b = right.len() as u64;
            universal_int_cost(a)
                + universal_int_cost(b)
                + binomial_cost(n64, a)
                + binomial_cost(n64 - a, b)
        }
        Structure::Chain { nodes } => {
            let len = nodes.len() as u64;
            let mut bits = universal_int_cost(len - 1);
            for i in 0..len {
                bits += ((n64 - i) as f64).log2();
            }
            bits
        }
    }
}

/// Header bits shared by every model of `k` structures: the count plus the
/// composition of the count over the four vocabulary types.
pub fn model_overhead(k: usize) -> f64 {
    universal_int_cost(k as u64 + 1)
        + binomial_cost((k + VOCABULARY_SIZE - 1) as u64, (VOCABULARY_SIZE - 1) as u64)
}

/// Total bits to describe a model: header plus each structure.
pub fn model_cost(structures: &[Structure], n: usize) -> f64 {
    model_overhead(structures.len())
        + structures
            .iter()
            .map(|s| structure_cost(s, n))
            .sum::<f64>()
}

/// Bits for the model, the error matrix, the overlap matrix, and their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    pub model_bits: f64,
    pub error_bits: f64,
    pub overlap_bits: f64,
    pub total_bits: f64,
}

impl CostBreakdown {
    pub fn new(model_bits: f64, error_bits: f64, overlap_bits: f64) -> CostBreakdown {
        CostBreakdown {
            model_bits,
            error_bits,
            overlap_bits,
            total_bits: model_bits + error_bits + overlap_bits,
        }
    }
}

pub(crate) fn cell_key(u: u32, v: u32) -> u64 {
    debug_assert_ne!(u, v);
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    ((lo as u64) << 32) | hi as u64
}

/// Evaluates a model from scratch: implied-cell cover counts, the split
/// error code over modeled and unmodeled areas, and (when requested) the
/// overlap code for multiply-covered cells.
pub fn total_cost(g: &Graph, structures: &[Structure], overlap_aware: bool) -> CostBreakdown {
    let mut counts: HashMap<u64, u32> = HashMap::new();
    for s in structures {
        s.for_each_implied_edge(|u, v| {
            *counts.entry(cell_key(u, v)).or_insert(0) += 1;
        });
    }
    let covered_cells = counts.len();
    let mut covered_edges = 0usize;
    let mut overlap_entries = 0usize;
    let mut overlap_count_bits = 0.0;
    for (&key, &count) in &counts {
        let (u, v) = ((key >> 32) as u32, key as u32);
        if g.has_edge(u, v) {
            covered_edges += 1;
        }
        if count >= 2 {
            overlap_entries += 1;
            overlap_count_bits += universal_int_cost(count as u64);
        }
    }
    let universe = g.pair_universe();
    let implied_absent = covered_cells - covered_edges;
    let unexplained = g.edge_count() - covered_edges;
    let error_bits = error_cost(covered_cells, implied_absent)
        + error_cost(universe - covered_cells, unexplained);
    let overlap_bits = if overlap_aware {
        overlap_cost(universe, overlap_entries, overlap_count_bits)
    } else {
        0.0
    };
    CostBreakdown::new(model_cost(structures, g.node_count()), error_bits, overlap_bits)
}

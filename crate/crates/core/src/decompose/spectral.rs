//! Spectral clustering: the k smallest eigenvectors of the symmetric
//! normalized Laplacian via orthogonal iteration, row normalization, then
//! seeded k-means with k-means++ restarts.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::decompose::{DecomposerConfig, Partition};
use crate::graph::Graph;
use crate::{Error, Result};

/// Applies B = 2I − L_sym column-wise: the k smallest Laplacian eigenvectors
/// are B's k largest, which orthogonal iteration finds. Isolated nodes act as
/// eigenvalue-2 directions (their Laplacian row is zero by convention).
fn apply_b(g: &Graph, inv_sqrt_deg: &[f64], x: &[f64], out: &mut [f64]) {
    for v in 0..g.node_count() {
        if g.degree(v as u32) == 0 {
            out[v] = 2.0 * x[v];
        } else {
            let mut sum = 0.0;
            for &w in g.neighbors(v as u32) {
                sum += x[w as usize] * inv_sqrt_deg[w as usize];
            }
            out[v] = x[v] + inv_sqrt_deg[v] * sum;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Modified Gram–Schmidt with a second orthogonalization round; columns that
/// collapse numerically are replaced with fresh random directions.
fn orthonormalize(cols: &mut [Vec<f64>], rng: &mut ChaCha8Rng) {
    let n = cols.first().map_or(0, |c| c.len());
    for j in 0..cols.len() {
        loop {
            let (head, tail) = cols.split_at_mut(j);
            let col = &mut tail[0];
            for _ in 0..2 {
                for prev in head.iter() {
                    let d = dot(prev, col);
                    for (c, p) in col.iter_mut().zip(prev) {
                        *c -= d * p;
                    }
                }
            }
            let norm = dot(col, col).sqrt();
            if norm > 1e-12 {
                for c in col.iter_mut() {
                    *c /= norm;
                }
                break;
            }
            for c in col.iter_mut().take(n) {
                *c = rng.gen::<f64>() * 2.0 - 1.0;
            }
        }
    }
}

/// Orthogonal iteration for the top-k invariant subspace of B. Returns the
/// orthonormal basis columns, or the convergence error after the sweep cap.
fn top_subspace(
    g: &Graph,
    k: usize,
    tolerance: f64,
    max_sweeps: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<f64>>> {
    let n = g.node_count();
    let inv_sqrt_deg: Vec<f64> = (0..n as u32)
        .map(|v| {
            let d = g.degree(v);
            if d == 0 {
                0.0
            } else {
                1.0 / (d as f64).sqrt()
            }
        })
        .collect();
    let mut x: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..n).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect())
        .collect();
    orthonormalize(&mut x, rng);

    let mut sweeps = 0usize;
    loop {
        let y: Vec<Vec<f64>> = x
            .iter()
            .map(|col| {
                let mut out = vec![0.0; n];
                apply_b(g, &inv_sqrt_deg, col, &mut out);
                out
            })
            .collect();
        // Residual ‖BX − X(XᵀBX)‖_F measures invariance of span(X).
        let mut residual_sq = 0.0;
        for j in 0..k {
            let coeffs: Vec<f64> = (0..k).map(|i| dot(&x[i], &y[j])).collect();
            for v in 0..n {
                let mut r = y[j][v];
                for i in 0..k {
                    r -= x[i][v] * coeffs[i];
                }
                residual_sq += r * r;
            }
        }
        let residual = residual_sq.sqrt();
        if residual <= tolerance {
            return Ok(x);
        }
        if sweeps >= max_sweeps {
            return Err(Error::Convergence { residual, sweeps });
        }
        x = y;
        orthonormalize(&mut x, rng);
        sweeps += 1;
    }
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// k-means++ seeding: first center uniform, the rest sampled proportionally
/// to squared distance from the nearest chosen center.
fn seed_centers(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut centers = vec![points[rng.gen_range(0..n)].clone()];
    let mut d2: Vec<f64> = points.iter().map(|p| dist_sq(p, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = d2.iter().sum();
        let idx = if total <= 0.0 {
            rng.gen_range(0..n)
        } else {
            let target = rng.gen::<f64>() * total;
            let mut acc = 0.0;
            let mut chosen = n - 1;
            for (i, &d) in d2.iter().enumerate() {
                acc += d;
                if acc >= target {
                    chosen = i;
                    break;
                }
            }
            chosen
        };
        centers.push(points[idx].clone());
        for (i, p) in points.iter().enumerate() {
            d2[i] = d2[i].min(dist_sq(p, centers.last().unwrap()));
        }
    }
    centers
}

/// Lloyd iterations (≤ 100): assign to the nearest center (ties to the lower
/// index), recompute means, and revive empty clusters with the globally
/// farthest point. Returns (assignment, within-cluster sum of squares).
fn lloyd(points: &[Vec<f64>], mut centers: Vec<Vec<f64>>, k: usize) -> (Vec<u32>, f64) {
    let n = points.len();
    let dim = points[0].len();
    let mut assign = vec![0u32; n];
    for _ in 0..100 {
        let mut changed = false;
        for (i, p) in points.iter().enumerate() {
            let mut best = 0u32;
            let mut best_d = f64::INFINITY;
            for (c, center) in centers.iter().enumerate() {
                let d = dist_sq(p, center);
                if d < best_d {
                    best_d = d;
                    best = c as u32;
                }
            }
            if assign[i] != best {
                assign[i] = best;
                changed = true;
            }
        }
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (i, p) in points.iter().enumerate() {
            counts[assign[i] as usize] += 1;
            for (s, &x) in sums[assign[i] as usize].iter_mut().zip(p) {
                *s += x;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                for s in sums[c].iter_mut() {
                    *s /= counts[c] as f64;
                }
                centers[c] = sums[c].clone();
            } else {
                // Revive with the point farthest from its current center.
                let far = (0..n)
                    .max_by(|&a, &b| {
                        let da = dist_sq(&points[a], &centers[assign[a] as usize]);
                        let db = dist_sq(&points[b], &centers[assign[b] as usize]);
                        da.partial_cmp(&db).unwrap().then(b.cmp(&a))
                    })
                    .unwrap();
                centers[c] = points[far].clone();
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let wcss = points
        .iter()
        .zip(&assign)
        .map(|(p, &a)| dist_sq(p, &centers[a as usize]))
        .sum();
    (assign, wcss)
}

/// Spectral clustering into `cfg.cluster_count` (or the size-based default)
/// parts. Errors with the residual if the eigensolver fails to converge.
pub fn spectral_cluster(g: &Graph, cfg: &DecomposerConfig) -> Result<Partition> {
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
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let basis = top_subspace(g, k, cfg.spectral_tolerance, cfg.spectral_max_sweeps, &mut rng)?;

    // Embed node v as the (row-normalized) v-th row of the basis.
    let mut points: Vec<Vec<f64>> = (0..n)
        .map(|v| basis.iter().map(|col| col[v]).collect::<Vec<f64>>())
        .collect();
    for p in points.iter_mut() {
        let norm = dot(p, p).sqrt();
        if norm > 1e-12 {
            for x in p.iter_mut() {
                *x /= norm;
            }
        }
    }

    let mut best: Option<(f64, Vec<u32>)> = None;
    for _ in 0..10 {
        let mut restart_rng = ChaCha8Rng::seed_from_u64(rng.gen::<u64>());
        let centers = seed_centers(&points, k, &mut restart_rng);
        let (assign, wcss) = lloyd(&points, centers, k);
        if best.as_ref().map_or(true, |(bw, _)| wcss < *bw) {
            best = Some((wcss, assign));
        }
    }
    Ok(Partition::from_labels(&best.unwrap().1))
}

//! Lloyd k-means with k-means++ initialization and restarts.
//!
//! The assignment step is data-parallel (per-sample nearest centroid); the
//! inertia reduction over the collected per-sample distances is sequential,
//! so results are identical with and without the `parallel` feature.

use ndarray::{Array2, ArrayView2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::util::{par_map_indices, seq_map_indices};

#[derive(Debug, Clone)]
pub struct KMeansConfig {
    pub k: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub rel_tol: f64,
    pub seed: u64,
}

impl KMeansConfig {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            restarts: 10,
            max_iters: 100,
            rel_tol: 1e-6,
            seed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct KMeansFit {
    pub centroids: Array2<f64>,
    pub labels: Vec<usize>,
    pub inertia: f64,
    pub iterations: usize,
}

fn nearest(row: &[f64], centroids: &Array2<f64>) -> (usize, f64) {
    let mut best = (0usize, f64::INFINITY);
    for (c, centroid) in centroids.outer_iter().enumerate() {
        let mut d2 = 0.0;
        for (a, b) in row.iter().zip(centroid.iter()) {
            let diff = a - b;
            d2 += diff * diff;
        }
        if d2 < best.1 {
            best = (c, d2);
        }
    }
    best
}

/// Index of the nearest centroid for every sample, with squared distances.
/// Parallel when the `parallel` feature is enabled.
pub fn nearest_centroids(data: ArrayView2<'_, f64>, centroids: &Array2<f64>) -> Vec<(usize, f64)> {
    let rows: Vec<&[f64]> = data.outer_iter().map(|r| r.to_slice().unwrap()).collect();
    par_map_indices(rows.len(), |i| nearest(rows[i], centroids))
}

/// Sequential reference path for [`nearest_centroids`], used by the benches.
pub fn nearest_centroids_seq(
    data: ArrayView2<'_, f64>,
    centroids: &Array2<f64>,
) -> Vec<(usize, f64)> {
    let rows: Vec<&[f64]> = data.outer_iter().map(|r| r.to_slice().unwrap()).collect();
    seq_map_indices(rows.len(), |i| nearest(rows[i], centroids))
}

/// k-means++ seeding: first centroid uniform, then D^2-weighted draws.
fn plus_plus_init(data: ArrayView2<'_, f64>, k: usize, rng: &mut ChaCha8Rng) -> Array2<f64> {
    let (n, d) = data.dim();
    let mut centroids = Array2::zeros((k, d));
    let first = rng.random_range(0..n);
    centroids.row_mut(0).assign(&data.row(first));

    let mut d2: Vec<f64> = data
        .outer_iter()
        .map(|row| {
            let diff = &row - &centroids.row(0);
            diff.dot(&diff)
        })
        .collect();

    for c in 1..k {
        let total: f64 = d2.iter().sum();
        let pick = if total <= 0.0 {
            // all remaining mass on existing centroids; fall back to uniform
            rng.random_range(0..n)
        } else {
            let target = rng.random_range(0.0..total);
            let mut acc = 0.0;
            let mut chosen = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                acc += w;
                if acc >= target {
                    chosen = i;
                    break;
                }
            }
            chosen
        };
        centroids.row_mut(c).assign(&data.row(pick));
        for (i, row) in data.outer_iter().enumerate() {
            let diff = &row - &centroids.row(c);
            let dist = diff.dot(&diff);
            if dist < d2[i] {
                d2[i] = dist;
            }
        }
    }
    centroids
}

fn lloyd(data: ArrayView2<'_, f64>, mut centroids: Array2<f64>, cfg: &KMeansConfig) -> KMeansFit {
    let (n, d) = data.dim();
    let k = cfg.k;
    let mut labels = vec![0usize; n];
    let mut prev_inertia = f64::INFINITY;
    let mut iterations = 0;

    for iter in 0..cfg.max_iters {
        iterations = iter + 1;
        let assigned = nearest_centroids(data, &centroids);
        let mut inertia = 0.0;
        for (i, &(label, dist)) in assigned.iter().enumerate() {
            labels[i] = label;
            inertia += dist;
        }
        assert!(
            inertia <= prev_inertia + 1e-9,
            "k-means inertia increased: {prev_inertia} -> {inertia}"
        );

        let mut sums = Array2::<f64>::zeros((k, d));
        let mut counts = vec![0usize; k];
        for (i, row) in data.outer_iter().enumerate() {
            let label = labels[i];
            counts[label] += 1;
            let mut sum_row = sums.row_mut(label);
            sum_row += &row;
        }
        // Re-seed empty clusters with the point farthest from its centroid.
        for c in 0..k {
            if counts[c] == 0 {
                let far = assigned
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1 .1.partial_cmp(&b.1 .1).unwrap())
                    .map(|(i, _)| i)
                    .unwrap();
                sums.row_mut(c).assign(&data.row(far));
                counts[c] = 1;
            }
        }
        for c in 0..k {
            let mut row = sums.row_mut(c);
            row /= counts[c] as f64;
        }
        centroids = sums;

        let improved = prev_inertia - inertia;
        if improved.abs() <= cfg.rel_tol * prev_inertia.max(f64::MIN_POSITIVE) && iter > 0 {
            prev_inertia = inertia;
            break;
        }
        prev_inertia = inertia;
    }

    // Final assignment against the updated centroids.
    let assigned = nearest_centroids(data, &centroids);
    let mut inertia = 0.0;
    for (i, &(label, dist)) in assigned.iter().enumerate() {
        labels[i] = label;
        inertia += dist;
    }
    KMeansFit {
        centroids,
        labels,
        inertia,
        iterations,
    }
}

/// Fits k-means, keeping the best of `cfg.restarts` runs by inertia.
/// Deterministic for a fixed seed.
pub fn fit(data: ArrayView2<'_, f64>, cfg: &KMeansConfig) -> Result<KMeansFit> {
    let n = data.nrows();
    if cfg.k == 0 {
        return Err(Error::Config("k-means requires k >= 1".into()));
    }
    if cfg.k > n {
        return Err(Error::InvalidInput(format!(
            "k-means requires k <= n_samples, got k={} n={n}",
            cfg.k
        )));
    }
    let mut best: Option<KMeansFit> = None;
    for restart in 0..cfg.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(restart as u64));
        let init = plus_plus_init(data, cfg.k, &mut rng);
        let fitted = lloyd(data, init, cfg);
        let better = match &best {
            None => true,
            Some(b) => fitted.inertia < b.inertia,
        };
        if better {
            best = Some(fitted);
        }
    }
    Ok(best.unwrap())
}

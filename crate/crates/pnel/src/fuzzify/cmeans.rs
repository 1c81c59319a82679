//! One-dimensional fuzzy c-means.
//!
//! Values are deduplicated and weighted by multiplicity before clustering;
//! centroids start at quantile-spaced distinct values, so runs are
//! deterministic for a given input regardless of the recorded seed. The
//! run keeps a per-iteration trace (objective, largest membership change,
//! worst row-sum error) for diagnostics and tests.

use super::{centroids_to_family, Fuzzifier, FuzzySetFamily};
use crate::error::{Error, Result};

/// Hyperparameters of the clustering loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMeansConfig {
    /// Fuzzifier exponent.
    pub m: f64,
    /// Convergence bound on the largest membership change.
    pub epsilon: f64,
    pub max_iterations: usize,
    /// Recorded for reproducibility bookkeeping; initialisation is
    /// quantile-based and does not draw random numbers.
    pub seed: u64,
}

impl Default for CMeansConfig {
    fn default() -> Self {
        CMeansConfig {
            m: 2.0,
            epsilon: 0.05,
            max_iterations: 100,
            seed: 0,
        }
    }
}

/// Diagnostics of one update step.
#[derive(Debug, Clone, Copy)]
pub struct CMeansIteration {
    /// Weighted within-cluster objective after the step.
    pub objective: f64,
    /// Largest absolute membership change against the previous step.
    pub max_delta: f64,
    /// Largest deviation of a membership row sum from 1.
    pub max_row_sum_error: f64,
}

/// Result of a clustering run.
#[derive(Debug, Clone)]
pub struct CMeansRun {
    /// Final centroids, ascending.
    pub centroids: Vec<f64>,
    /// Distinct input values, ascending, and their multiplicities.
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    /// Final memberships, one row per distinct point.
    pub memberships: Vec<Vec<f64>>,
    pub iterations: Vec<CMeansIteration>,
}

/// c-means selected from the fuzzifier registry.
#[derive(Debug, Clone, Copy)]
pub struct FuzzyCMeans {
    pub sets: usize,
    pub config: CMeansConfig,
}

impl Fuzzifier for FuzzyCMeans {
    fn name(&self) -> &'static str {
        "cmeans"
    }

    fn build(&self, property: &str, values: &[f64]) -> Result<FuzzySetFamily> {
        let run = cmeans_centroids(values, self.sets, self.config).map_err(|e| {
            Error::Fuzzification {
                property: property.to_string(),
                message: e.to_string(),
            }
        })?;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        centroids_to_family(property, &run.centroids, (min, max))
    }
}

fn memberships(points: &[f64], centroids: &[f64], m: f64) -> Vec<Vec<f64>> {
    let exponent = 1.0 / (m - 1.0);
    points
        .iter()
        .map(|&x| {
            let d2: Vec<f64> = centroids.iter().map(|&c| (x - c) * (x - c)).collect();
            let zeros = d2.iter().filter(|&&d| d == 0.0).count();
            if zeros > 0 {
                // The point sits on a centroid: membership concentrates there.
                return d2
                    .iter()
                    .map(|&d| if d == 0.0 { 1.0 / zeros as f64 } else { 0.0 })
                    .collect();
            }
            d2.iter()
                .map(|&di| {
                    let denom: f64 = d2.iter().map(|&dl| (di / dl).powf(exponent)).sum();
                    1.0 / denom
                })
                .collect()
        })
        .collect()
}

fn objective(points: &[f64], weights: &[f64], u: &[Vec<f64>], centroids: &[f64], m: f64) -> f64 {
    let mut total = 0.0;
    for (j, &x) in points.iter().enumerate() {
        for (i, &c) in centroids.iter().enumerate() {
            total += weights[j] * u[j][i].powf(m) * (x - c) * (x - c);
        }
    }
    total
}

/// Cluster `values` into `k` centroids.
pub fn cmeans_centroids(values: &[f64], k: usize, cfg: CMeansConfig) -> Result<CMeansRun> {
    let err = |message: String| Error::Fuzzification {
        property: String::new(),
        message,
    };
    if k < 2 {
        return Err(err(format!("need at least 2 clusters, got {k}")));
    }
    if cfg.m <= 1.0 || !cfg.m.is_finite() {
        return Err(err(format!("fuzzifier exponent must exceed 1, got {}", cfg.m)));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(err("non-finite values".to_string()));
    }

    // Deduplicate, weighting each distinct value by its multiplicity.
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for &v in &sorted {
        if points.last() == Some(&v) {
            *weights.last_mut().unwrap() += 1.0;
        } else {
            points.push(v);
            weights.push(1.0);
        }
    }
    if points.len() < k {
        return Err(err(format!(
            "{} distinct values cannot seed {k} clusters",
            points.len()
        )));
    }

    // Quantile-spaced initial centroids over the distinct values.
    let n = points.len();
    let mut centroids: Vec<f64> = (0..k)
        .map(|i| points[((i * (n - 1)) as f64 / (k - 1) as f64).round() as usize])
        .collect();

    let mut u = memberships(&points, &centroids, cfg.m);
    let mut iterations = Vec::new();
    for _ in 0..cfg.max_iterations {
        // Centroids from current memberships.
        for (i, c) in centroids.iter_mut().enumerate() {
            let mut num = 0.0;
            let mut den = 0.0;
            for (j, &x) in points.iter().enumerate() {
                let w = weights[j] * u[j][i].powf(cfg.m);
                num += w * x;
                den += w;
            }
            if den > 0.0 {
                *c = num / den;
            }
        }
        // Memberships from new centroids.
        let u_next = memberships(&points, &centroids, cfg.m);
        let mut max_delta = 0.0f64;
        let mut max_row_err = 0.0f64;
        for j in 0..n {
            let row_sum: f64 = u_next[j].iter().sum();
            max_row_err = max_row_err.max((row_sum - 1.0).abs());
            for i in 0..k {
                max_delta = max_delta.max((u_next[j][i] - u[j][i]).abs());
            }
        }
        u = u_next;
        iterations.push(CMeansIteration {
            objective: objective(&points, &weights, &u, &centroids, cfg.m),
            max_delta,
            max_row_sum_error: max_row_err,
        });
        if max_delta < cfg.epsilon {
            break;
        }
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| centroids[a].total_cmp(&centroids[b]));
    let centroids: Vec<f64> = order.iter().map(|&i| centroids[i]).collect();
    let memberships_sorted: Vec<Vec<f64>> = u
        .iter()
        .map(|row| order.iter().map(|&i| row[i]).collect())
        .collect();
    if centroids.windows(2).any(|w| w[0] == w[1]) {
        return Err(err("centroids collapsed".to_string()));
    }

    Ok(CMeansRun {
        centroids,
        points,
        weights,
        memberships: memberships_sorted,
        iterations,
    })
}

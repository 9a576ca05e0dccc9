//! Paired bootstrap significance test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MetricsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub resamples: usize,
    pub confidence: f64,
    pub seed: u64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            resamples: 1000,
            confidence: 0.95,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapResult {
    /// Mean of `a - b` over the original sample.
    pub mean_diff: f64,
    pub lower: f64,
    pub upper: f64,
    pub significant: bool,
}

/// Resampled means of the paired differences. Each resample draws `n`
/// indices uniformly with replacement from one ChaCha8 stream.
pub fn resample_means(diffs: &[f64], resamples: usize, seed: u64) -> Vec<f64> {
    let n = diffs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..resamples)
        .map(|_| {
            let sum: f64 = (0..n).map(|_| diffs[rng.gen_range(0..n)]).sum();
            sum / n as f64
        })
        .collect()
}

/// Percentile interval of sorted values at the given confidence.
pub fn percentile_interval(sorted: &[f64], confidence: f64) -> (f64, f64) {
    let r = sorted.len();
    let alpha = (1.0 - confidence) / 2.0;
    let lo = ((alpha * r as f64).floor() as usize).min(r - 1);
    let hi = (((1.0 - alpha) * r as f64).ceil() as usize)
        .saturating_sub(1)
        .min(r - 1);
    (sorted[lo], sorted[hi])
}

pub fn bootstrap_test(a: &[f64], b: &[f64], config: &BootstrapConfig) -> Result<BootstrapResult, MetricsError> {
    if a.len() != b.len() {
        return Err(MetricsError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() || config.resamples == 0 {
        return Err(MetricsError::EmptySubset);
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean_diff = diffs.iter().sum::<f64>() / diffs.len() as f64;
    let mut means = resample_means(&diffs, config.resamples, config.seed);
    means.sort_by(f64::total_cmp);
    let (lower, upper) = percentile_interval(&means, config.confidence);
    Ok(BootstrapResult {
        mean_diff,
        lower,
        upper,
        significant: lower > 0.0 || upper < 0.0,
    })
}

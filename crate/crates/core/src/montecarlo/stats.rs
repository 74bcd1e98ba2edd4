//! Estimate accumulation: pairwise summation, k-statistics up to order 3.

use std::collections::BTreeMap;

/// mean ± stderr of one reported statistic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

/// Result of an empirical run; `estimates` is ordered for stable output.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleBatch {
    pub group: String,
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    pub estimates: BTreeMap<String, Estimate>,
}

/// Pairwise (tree) summation; the reduction order is a pure function of the
/// length, so results are reproducible.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Sample mean with the standard error of the mean.
pub fn mean_estimate(values: &[f64]) -> Estimate {
    let t = values.len() as f64;
    let mean = pairwise_sum(values) / t;
    let centered_sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let var = pairwise_sum(&centered_sq) / (t - 1.0);
    Estimate { mean, stderr: (var / t).sqrt() }
}

/// Unbiased covariance k₂(x, y) with a delta-method standard error (the
/// spread of the centered products).
pub fn covariance_estimate(xs: &[f64], ys: &[f64]) -> Estimate {
    let t = xs.len() as f64;
    let mx = pairwise_sum(xs) / t;
    let my = pairwise_sum(ys) / t;
    let products: Vec<f64> = xs.iter().zip(ys).map(|(&x, &y)| (x - mx) * (y - my)).collect();
    let m = pairwise_sum(&products) / t;
    let k2 = m * t / (t - 1.0);
    let centered_sq: Vec<f64> = products.iter().map(|p| (p - m) * (p - m)).collect();
    let var = pairwise_sum(&centered_sq) / (t - 1.0);
    Estimate { mean: k2, stderr: (var / t).sqrt() }
}

/// Third joint k-statistic k₃(x, y, z) with a delta-method standard error.
pub fn third_cumulant_estimate(xs: &[f64], ys: &[f64], zs: &[f64]) -> Estimate {
    let t = xs.len() as f64;
    let mx = pairwise_sum(xs) / t;
    let my = pairwise_sum(ys) / t;
    let mz = pairwise_sum(zs) / t;
    let products: Vec<f64> = xs
        .iter()
        .zip(ys)
        .zip(zs)
        .map(|((&x, &y), &z)| (x - mx) * (y - my) * (z - mz))
        .collect();
    let m3 = pairwise_sum(&products) / t;
    let k3 = m3 * t * t / ((t - 1.0) * (t - 2.0));
    let centered_sq: Vec<f64> = products.iter().map(|p| (p - m3) * (p - m3)).collect();
    let var = pairwise_sum(&centered_sq) / (t - 1.0);
    Estimate { mean: k3, stderr: (var / t).sqrt() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_exact_values() {
        let vals: Vec<f64> = (1..=100).map(|v| v as f64).collect();
        assert_eq!(pairwise_sum(&vals), 5050.0);
    }

    #[test]
    fn mean_and_stderr_of_constant_is_exact() {
        let vals = vec![3.0; 50];
        let e = mean_estimate(&vals);
        assert_eq!(e.mean, 3.0);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn covariance_of_identical_series_is_variance() {
        let vals: Vec<f64> = vec![1.0, 2.0, 3.0, 4.0];
        let e = covariance_estimate(&vals, &vals);
        // unbiased variance of 1,2,3,4 is 5/3
        assert!((e.mean - 5.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn third_cumulant_of_symmetric_data_vanishes() {
        let vals: Vec<f64> = vec![-2.0, -1.0, 1.0, 2.0, -2.0, -1.0, 1.0, 2.0];
        let e = third_cumulant_estimate(&vals, &vals, &vals);
        assert!(e.mean.abs() < 1e-12);
    }
}

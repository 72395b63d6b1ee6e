//! Kolmogorov–Smirnov statistic of a sample against the standard Gaussian.

use crate::error::{Error, Result};
use crate::sim::normal::normal_cdf;

/// Standardizes the samples by `(mean, sd)` and returns
/// `sup_i max(|i/N - Φ(z_i)|, |(i-1)/N - Φ(z_i)|)` over the sorted sample.
pub fn empirical_ks(samples: &[f64], mean: f64, sd: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::domain("empirical KS needs at least one sample"));
    }
    if sd.is_nan() || sd <= 0.0 {
        return Err(Error::domain(format!("sd must be positive, got {sd}")));
    }
    let mut z: Vec<f64> = samples.iter().map(|&x| (x - mean) / sd).collect();
    z.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    let n = z.len() as f64;
    let mut sup = 0.0f64;
    for (i, &zi) in z.iter().enumerate() {
        let phi = normal_cdf(zi);
        let above = (i + 1) as f64 / n - phi;
        let below = i as f64 / n - phi;
        sup = sup.max(above.abs()).max(below.abs());
    }
    Ok(sup)
}

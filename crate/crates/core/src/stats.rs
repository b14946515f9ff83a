//! Batch-means machinery and small statistical helpers used by the Monte
//! Carlo estimators and their verification tests.

use statrs::distribution::{ChiSquared, ContinuousCDF, StudentsT};

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn sample_variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return f64::NAN;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Two-sided 95% Student-t quantile for `df` degrees of freedom.
pub fn t_quantile_975(df: f64) -> f64 {
    StudentsT::new(0.0, 1.0, df.max(1.0))
        .expect("valid t distribution")
        .inverse_cdf(0.975)
}

/// Upper critical value of a chi-squared distribution: P(X <= value) = level.
pub fn chi_squared_critical(df: f64, level: f64) -> f64 {
    ChiSquared::new(df).expect("valid chi-squared").inverse_cdf(level)
}

/// Batch-means estimate of a ratio `sum(numerators) / sum(denominators)`
/// over weakly dependent cycle data.
#[derive(Debug, Clone, Copy)]
pub struct BatchMeans {
    /// Overall ratio across all data.
    pub mean: f64,
    /// Standard error of the batch ratios around their mean.
    pub se: f64,
    /// 95% halfwidth using a Student-t quantile with `batches - 1` df.
    pub ci95_halfwidth: f64,
    pub batches: usize,
}

/// Split `(numerator, denominator)` pairs into up to `target_batches`
/// contiguous batches and form each batch's ratio. Needs at least two pairs.
pub fn batch_means_ratio(pairs: &[(f64, f64)], target_batches: usize) -> Option<BatchMeans> {
    let n = pairs.len();
    if n < 2 {
        return None;
    }
    let batches = target_batches.clamp(2, n / 2).max(2);
    let base = n / batches;
    let extra = n % batches;
    let mut values = Vec::with_capacity(batches);
    let mut idx = 0usize;
    let mut total_num = 0.0;
    let mut total_den = 0.0;
    for b in 0..batches {
        let len = base + usize::from(b < extra);
        let mut num = 0.0;
        let mut den = 0.0;
        for &(x, y) in &pairs[idx..idx + len] {
            num += x;
            den += y;
        }
        idx += len;
        total_num += num;
        total_den += den;
        values.push(num / den);
    }
    let overall = total_num / total_den;
    let var = sample_variance(&values);
    let se = (var / batches as f64).sqrt();
    let hw = t_quantile_975((batches - 1) as f64) * se;
    Some(BatchMeans { mean: overall, se, ci95_halfwidth: hw, batches })
}

/// Mean, standard error, and t-based 95% halfwidth of independent
/// replication estimates.
pub fn replication_summary(values: &[f64]) -> (f64, f64, f64) {
    let m = mean(values);
    if values.len() < 2 {
        return (m, 0.0, 0.0);
    }
    let se = (sample_variance(values) / values.len() as f64).sqrt();
    (m, se, t_quantile_975((values.len() - 1) as f64) * se)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_quantile_sane() {
        let t29 = t_quantile_975(29.0);
        assert!((t29 - 2.045).abs() < 2e-3, "{t29}");
        let t_lots = t_quantile_975(1e6);
        assert!((t_lots - 1.96).abs() < 1e-2);
    }

    #[test]
    fn chi_squared_critical_sane() {
        // 99th percentile of chi2(63) is about 92.01.
        let c = chi_squared_critical(63.0, 0.99);
        assert!((c - 92.01).abs() < 0.1, "{c}");
    }

    #[test]
    fn batch_ratio_of_constant_data_has_zero_spread() {
        let pairs: Vec<(f64, f64)> = (0..120).map(|_| (2.0, 4.0)).collect();
        let bm = batch_means_ratio(&pairs, 30).unwrap();
        assert_eq!(bm.batches, 30);
        assert!((bm.mean - 0.5).abs() < 1e-15);
        assert!(bm.se.abs() < 1e-15);
    }

    #[test]
    fn batch_count_degrades_for_short_series() {
        let pairs: Vec<(f64, f64)> = (0..7).map(|i| (i as f64, 1.0)).collect();
        let bm = batch_means_ratio(&pairs, 30).unwrap();
        assert!(bm.batches >= 2 && bm.batches <= 3);
        assert!(batch_means_ratio(&pairs[..1], 30).is_none());
    }
}

//! Summary statistics and the two hypothesis tests the suite needs.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

/// Linear-interpolation quantile of sorted data (the usual "type 7").
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn median(values: &[f64]) -> Option<f64> {
    Summary::of(values).map(|s| s.median)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub min: f64,
    pub q05: f64,
    pub median: f64,
    pub q95: f64,
    pub max: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Some(Self {
            count: v.len(),
            mean: v.iter().sum::<f64>() / v.len() as f64,
            min: v[0],
            q05: quantile_sorted(&v, 0.05),
            median: quantile_sorted(&v, 0.5),
            q95: quantile_sorted(&v, 0.95),
            max: v[v.len() - 1],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
}

/// Pearson chi-square against equal expected counts in every cell.
pub fn chi_square_uniform(counts: &[u64]) -> TestResult {
    assert!(counts.len() >= 2, "need at least two cells");
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let statistic = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum::<f64>();
    let dist = ChiSquared::new((counts.len() - 1) as f64).expect("positive degrees of freedom");
    TestResult {
        statistic,
        p_value: dist.sf(statistic),
    }
}

/// Two-sided Mann-Whitney U test, normal approximation with tie correction.
/// `statistic` is U for the first sample.
pub fn mann_whitney(a: &[f64], b: &[f64]) -> TestResult {
    assert!(!a.is_empty() && !b.is_empty(), "both samples must be non-empty");
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let mut all: Vec<(f64, bool)> = a.iter().map(|&x| (x, true)).chain(b.iter().map(|&x| (x, false))).collect();
    all.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut rank_sum_a = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        while j + 1 < all.len() && all[j + 1].0 == all[i].0 {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        rank_sum_a += rank * all[i..=j].iter().filter(|x| x.1).count() as f64;
        i = j + 1;
    }
    let u = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
    let n = n1 + n2;
    let mean = n1 * n2 / 2.0;
    let var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        // Every observation tied.
        return TestResult {
            statistic: u,
            p_value: 1.0,
        };
    }
    let z = ((u - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let std_normal = Normal::new(0.0, 1.0).expect("valid normal");
    TestResult {
        statistic: u,
        p_value: (2.0 * std_normal.sf(z)).min(1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles() {
        let s = Summary::of(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(s.median, 2.5);
        assert_eq!(s.min, 1.0);
        assert!((s.q05 - 1.15).abs() < 1e-12);
        let one = Summary::of(&[7.0]).unwrap();
        assert_eq!((one.median, one.mean, one.q95), (7.0, 7.0, 7.0));
        assert!(Summary::of(&[]).is_none());
    }

    #[test]
    fn chi_square_known_value() {
        // 2.4 on 2 dof: p = exp(-1.2)
        let r = chi_square_uniform(&[12, 6, 12]);
        assert!((r.statistic - 2.4).abs() < 1e-12);
        assert!((r.p_value - (-1.2f64).exp()).abs() < 1e-9);
        let r = chi_square_uniform(&[10, 10, 10, 10]);
        assert_eq!(r.statistic, 0.0);
        assert!((r.p_value - 1.0).abs() < 1e-12);
        let two = chi_square_uniform(&[15, 5]);
        // statistic 5 on 1 dof
        assert!((two.statistic - 5.0).abs() < 1e-12);
        assert!((two.p_value - 0.025347).abs() < 1e-5);
    }

    #[test]
    fn mann_whitney_small_case() {
        let a = [1.0, 2.0, 3.0];
        let b = [4.0, 5.0, 6.0];
        let r = mann_whitney(&a, &b);
        assert_eq!(r.statistic, 0.0);
        // z = (4.5 - 0.5) / sqrt(5.25)
        let z: f64 = 4.0 / 5.25f64.sqrt();
        let expect = 2.0 * Normal::new(0.0, 1.0).unwrap().sf(z);
        assert!((r.p_value - expect).abs() < 1e-12);
        assert_eq!(mann_whitney(&[1.0, 1.0], &[1.0]).p_value, 1.0);
        let same = mann_whitney(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 3.0, 4.0]);
        assert!(same.p_value > 0.9);
    }
}

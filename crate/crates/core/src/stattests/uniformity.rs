use super::{TestError, TestReport};
use crate::special::kolmogorov_sf;

/// One-sample Kolmogorov-Smirnov test of `samples` against U(0, 1).
pub fn ks_uniformity(samples: &[f64], alpha: f64) -> Result<TestReport, TestError> {
    const NAME: &str = "ks_uniformity";
    if samples.len() < 10 {
        return Err(TestError::TooFewSamples {
            test: NAME,
            needed: 10,
            got: samples.len(),
        });
    }
    if samples.iter().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(TestError::InvalidParameter {
            test: NAME,
            reason: "samples must lie in [0, 1]".into(),
        });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let d = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let above = (i as f64 + 1.0) / n - x;
            let below = x - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max);
    let p = kolmogorov_sf(sorted.len(), d);
    // one-sided suspicion only: a tiny D is not evidence against uniformity
    let mut report = TestReport::new(NAME, format!("n={}", sorted.len()), d, p, sorted.len(), alpha);
    if p >= alpha {
        report.verdict = super::Verdict::Pass;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evenly_spread_passes() {
        let samples: Vec<f64> = (0..200).map(|i| (i as f64 + 0.5) / 200.0).collect();
        let r = ks_uniformity(&samples, 1e-3).unwrap();
        assert!((r.statistic - 0.0025).abs() < 1e-12);
        assert!(r.passed());
    }

    #[test]
    fn clustered_fails() {
        let samples: Vec<f64> = (0..200).map(|i| i as f64 / 2000.0).collect();
        let r = ks_uniformity(&samples, 1e-3).unwrap();
        assert!(r.statistic > 0.89);
        assert!(!r.passed());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(ks_uniformity(&[1.5; 20], 1e-3).is_err());
        assert!(ks_uniformity(&[0.5; 5], 1e-3).is_err());
    }
}

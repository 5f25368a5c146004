//! Desk-scale statistical battery.
//!
//! Every test maps a sample to a statistic and a p-value. A result is
//! suspicious in either tail: the verdict is `Fail` when `p < alpha` or
//! `p > 1 - alpha`. A p-value of exactly 1.0 (a continuous statistic landing
//! exactly on its centre, e.g. perfectly balanced bits) is treated as an
//! interior value and passes.

mod battery;
mod bits;
mod frequency;
mod uniformity;
mod words;

use std::fmt;

use thiserror::Error;

pub use battery::{
    run_battery, run_battery_with, run_on_words, BatteryError, BatteryManifest, BatteryReport, TestInstance, TestKind,
    MIN_BATTERY_WORDS,
};
pub use bits::{pack_bits, BitLane, Bits};
pub use frequency::{monobit, runs_test};
pub use uniformity::ks_uniformity;
pub use words::{birthday_spacings, gap_test, lag_autocorrelation, serial_pairs_chisq};

/// Default significance level.
pub const DEFAULT_ALPHA: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TestError {
    #[error("{test}: need at least {needed} samples, got {got}")]
    TooFewSamples {
        test: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("{test}: invalid parameter: {reason}")]
    InvalidParameter { test: &'static str, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_p(p_value: f64, alpha: f64) -> Self {
        let suspicious_low = p_value < alpha;
        let suspicious_high = p_value > 1.0 - alpha && p_value < 1.0;
        if p_value.is_nan() || suspicious_low || suspicious_high {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TestReport {
    pub test_name: String,
    /// Parameters in `key=value;...` form.
    pub params: String,
    pub statistic: f64,
    pub p_value: f64,
    pub n_samples: usize,
    pub alpha: f64,
    pub verdict: Verdict,
}

impl TestReport {
    pub(crate) fn new(
        test_name: impl Into<String>,
        params: impl Into<String>,
        statistic: f64,
        p_value: f64,
        n_samples: usize,
        alpha: f64,
    ) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        Self {
            test_name: test_name.into(),
            params: params.into(),
            statistic,
            p_value,
            n_samples,
            alpha,
            verdict: Verdict::from_p(p_value, alpha),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Re-evaluates the verdict at another significance level.
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self.verdict = Verdict::from_p(self.p_value, alpha);
        self
    }
}

impl fmt::Display for TestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<24} {:<28} stat={:<14.6e} p={:<12.4e} {}",
            self.test_name, self.params, self.statistic, self.p_value, self.verdict
        )
    }
}

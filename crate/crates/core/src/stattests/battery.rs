//! A fixed, versioned list of parameterised tests run over one drawn sample.
//!
//! Each instance may rotate every word left by `rotate` bits before testing,
//! which moves low-order bits into the high positions that the word-level
//! tests look at.
//!
//! Manifests are TOML:
//!
//! ```toml
//! version = "desk-v1"
//!
//! [[test]]
//! name = "serial_lo4"
//! kind = "serial_pairs"
//! bits_per_cell = 4
//! rotate = 28
//! ```
//!
//! `kind` is one of `monobit`, `runs` (optional `lane`: bit index, default
//! all bits), `serial_pairs` (`bits_per_cell`), `gap` (`lo`, `hi`),
//! `birthday_spacings` (`m`, `log2_d`) or `lag_autocorrelation` (`lag`).

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::bits::{BitLane, Bits};
use super::frequency::{monobit, runs_test};
use super::words::{birthday_spacings, gap_test, lag_autocorrelation, serial_pairs_chisq};
use super::{TestError, TestReport};
use crate::source::WordSource;

/// Smallest sample the battery accepts.
pub const MIN_BATTERY_WORDS: usize = 1 << 20;

#[derive(Debug, Error)]
pub enum BatteryError {
    #[error("battery needs at least {MIN_BATTERY_WORDS} words, got {0}")]
    TooFewWords(usize),
    #[error("alpha must be in (0, 0.5), got {0}")]
    InvalidAlpha(f64),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestKind {
    Monobit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lane: Option<u8>,
    },
    Runs {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lane: Option<u8>,
    },
    SerialPairs {
        bits_per_cell: u32,
    },
    Gap {
        lo: f64,
        hi: f64,
    },
    BirthdaySpacings {
        m: usize,
        log2_d: u32,
    },
    LagAutocorrelation {
        lag: usize,
    },
}

impl TestKind {
    fn params(&self) -> String {
        match self {
            TestKind::Monobit { lane } | TestKind::Runs { lane } => match lane {
                Some(b) => format!("lane={b}"),
                None => "lane=all".into(),
            },
            TestKind::SerialPairs { bits_per_cell } => format!("bits_per_cell={bits_per_cell}"),
            TestKind::Gap { lo, hi } => format!("lo={lo};hi={hi}"),
            TestKind::BirthdaySpacings { m, log2_d } => format!("m={m};d=2^{log2_d}"),
            TestKind::LagAutocorrelation { lag } => format!("lag={lag}"),
        }
    }

    fn run(&self, words: &[u32], alpha: f64) -> Result<TestReport, TestError> {
        let lane = |l: &Option<u8>| l.map_or(BitLane::All, BitLane::Single);
        match self {
            TestKind::Monobit { lane: l } => monobit(Bits::lane(words, lane(l)), alpha),
            TestKind::Runs { lane: l } => runs_test(Bits::lane(words, lane(l)), alpha),
            TestKind::SerialPairs { bits_per_cell } => serial_pairs_chisq(words, *bits_per_cell, alpha),
            TestKind::Gap { lo, hi } => gap_test(words, *lo, *hi, alpha),
            TestKind::BirthdaySpacings { m, log2_d } => birthday_spacings(words, *m, 1u64 << log2_d, alpha),
            TestKind::LagAutocorrelation { lag } => lag_autocorrelation(words, *lag, alpha),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestInstance {
    pub name: String,
    #[serde(flatten)]
    pub test: TestKind,
    #[serde(default)]
    pub rotate: u32,
}

impl TestInstance {
    fn new(name: &str, test: TestKind, rotate: u32) -> Self {
        Self {
            name: name.to_owned(),
            test,
            rotate,
        }
    }

    pub fn params(&self) -> String {
        format!("{};rotate={}", self.test.params(), self.rotate)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatteryManifest {
    pub version: String,
    #[serde(rename = "test")]
    pub tests: Vec<TestInstance>,
}

impl BatteryManifest {
    /// The default battery, 17 instances.
    pub fn desk_v1() -> Self {
        use TestKind::*;
        let tests = vec![
            TestInstance::new("monobit", Monobit { lane: None }, 0),
            TestInstance::new("monobit_bit0", Monobit { lane: Some(0) }, 0),
            TestInstance::new("runs", Runs { lane: None }, 0),
            TestInstance::new("runs_bit0", Runs { lane: Some(0) }, 0),
            TestInstance::new("serial_hi8", SerialPairs { bits_per_cell: 8 }, 0),
            TestInstance::new("serial_mid8", SerialPairs { bits_per_cell: 8 }, 16),
            TestInstance::new("serial_lo4", SerialPairs { bits_per_cell: 4 }, 28),
            TestInstance::new("gap_half", Gap { lo: 0.0, hi: 0.5 }, 0),
            TestInstance::new("gap_sixteenth", Gap { lo: 0.25, hi: 0.3125 }, 0),
            TestInstance::new("gap_lo_byte", Gap { lo: 0.0, hi: 0.0625 }, 24),
            TestInstance::new("birthday_32", BirthdaySpacings { m: 4096, log2_d: 32 }, 0),
            TestInstance::new("birthday_rot16", BirthdaySpacings { m: 4096, log2_d: 32 }, 16),
            TestInstance::new("lag_1", LagAutocorrelation { lag: 1 }, 0),
            TestInstance::new("lag_2", LagAutocorrelation { lag: 2 }, 0),
            TestInstance::new("lag_16", LagAutocorrelation { lag: 16 }, 0),
            TestInstance::new("lag_32", LagAutocorrelation { lag: 32 }, 0),
            TestInstance::new("lag_16_lo4", LagAutocorrelation { lag: 16 }, 28),
        ];
        Self {
            version: "desk-v1".into(),
            tests,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, BatteryError> {
        let manifest: Self = toml::from_str(text).map_err(|e| BatteryError::Manifest(e.to_string()))?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serialises")
    }

    pub fn validate(&self) -> Result<(), BatteryError> {
        if self.tests.is_empty() {
            return Err(BatteryError::Manifest("no tests".into()));
        }
        for t in &self.tests {
            if t.rotate >= 32 {
                return Err(BatteryError::Manifest(format!("{}: rotate must be < 32", t.name)));
            }
            if let TestKind::Monobit { lane: Some(b) } | TestKind::Runs { lane: Some(b) } = t.test {
                if b >= 32 {
                    return Err(BatteryError::Manifest(format!("{}: lane must be < 32", t.name)));
                }
            }
            if let TestKind::BirthdaySpacings { log2_d, .. } = t.test {
                if !(1..=32).contains(&log2_d) {
                    return Err(BatteryError::Manifest(format!("{}: log2_d must be in 1..=32", t.name)));
                }
            }
        }
        Ok(())
    }
}

impl Default for BatteryManifest {
    fn default() -> Self {
        Self::desk_v1()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatteryReport {
    pub generator: String,
    pub manifest_version: String,
    pub n_words: usize,
    pub alpha: f64,
    pub reports: Vec<TestReport>,
    pub failure_count: usize,
    /// Set when a test errored; `reports` then holds the tests before it.
    pub incomplete: Option<String>,
}

impl BatteryReport {
    pub fn is_complete(&self) -> bool {
        self.incomplete.is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = &TestReport> {
        self.reports.iter().filter(|r| !r.passed())
    }

    /// CSV with columns `test_name,params,statistic,p_value,verdict`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), BatteryError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["test_name", "params", "statistic", "p_value", "verdict"])?;
        for r in &self.reports {
            w.write_record([
                r.test_name.as_str(),
                r.params.as_str(),
                &format!("{:e}", r.statistic),
                &format!("{:e}", r.p_value),
                r.verdict.as_str(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "battery {} on {} ({} words, alpha={}): failure_count={} of {} tests",
            self.manifest_version,
            self.generator,
            self.n_words,
            self.alpha,
            self.failure_count,
            self.reports.len()
        );
        for r in self.failures() {
            s.push_str(&format!("\n  FAIL {r}"));
        }
        if let Some(reason) = &self.incomplete {
            s.push_str(&format!("\n  INCOMPLETE: {reason}"));
        }
        s
    }
}

/// Draws `n_words` from `source` and runs the default battery.
pub fn run_battery<S: WordSource + ?Sized>(
    generator: &str,
    source: &mut S,
    n_words: usize,
    alpha: f64,
) -> Result<BatteryReport, BatteryError> {
    run_battery_with(&BatteryManifest::desk_v1(), generator, source, n_words, alpha)
}

pub fn run_battery_with<S: WordSource + ?Sized>(
    manifest: &BatteryManifest,
    generator: &str,
    source: &mut S,
    n_words: usize,
    alpha: f64,
) -> Result<BatteryReport, BatteryError> {
    if n_words < MIN_BATTERY_WORDS {
        return Err(BatteryError::TooFewWords(n_words));
    }
    let mut words = vec![0u32; n_words];
    source.fill(&mut words);
    run_on_words(manifest, generator, &words, alpha)
}

/// Runs `manifest` over an already drawn sample.
pub fn run_on_words(
    manifest: &BatteryManifest,
    generator: &str,
    words: &[u32],
    alpha: f64,
) -> Result<BatteryReport, BatteryError> {
    if words.len() < MIN_BATTERY_WORDS {
        return Err(BatteryError::TooFewWords(words.len()));
    }
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(BatteryError::InvalidAlpha(alpha));
    }
    manifest.validate()?;

    let rotated: BTreeMap<u32, Vec<u32>> = manifest
        .tests
        .iter()
        .map(|t| t.rotate)
        .filter(|&r| r != 0)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(|r| (r, words.iter().map(|w| w.rotate_left(r)).collect()))
        .collect();

    let results: Vec<Result<TestReport, TestError>> = manifest
        .tests
        .par_iter()
        .map(|t| {
            let sample = if t.rotate == 0 { words } else { &rotated[&t.rotate] };
            t.test.run(sample, alpha).map(|mut r| {
                r.test_name = t.name.clone();
                r.params = t.params();
                r
            })
        })
        .collect();

    let mut reports = Vec::with_capacity(results.len());
    let mut incomplete = None;
    for (t, result) in manifest.tests.iter().zip(results) {
        match result {
            Ok(r) => reports.push(r),
            Err(e) => {
                incomplete = Some(format!("{}: {e}", t.name));
                break;
            }
        }
    }
    let failure_count = reports.iter().filter(|r| !r.passed()).count();
    Ok(BatteryReport {
        generator: generator.to_owned(),
        manifest_version: manifest.version.clone(),
        n_words: words.len(),
        alpha,
        reports,
        failure_count,
        incomplete,
    })
}

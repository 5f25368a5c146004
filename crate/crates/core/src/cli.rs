//! Command-line front end behind the `hybrid-rng` binary.
//!
//! Subcommands:
//!
//! * `gen` writes raw little-endian 32-bit words, no header, for external
//!   stream testers. Without `--words` the stream is unbounded.
//! * `test` runs the battery and writes its CSV plus a summary on stderr.
//! * `bench` times word production (single stream, or `--streams S` threads).
//! * `sweep` runs the battery and the timer over a grid of sizes and
//!   repetitions, one `k,n,failure_count,mean_seconds` row per cell.
//!
//! CSV goes to `--csv PATH` if given, else into the report directory
//! (`--report-dir`, or the `HYBRID_RNG_REPORT_DIR` environment variable),
//! else to stdout.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime failure, 3 battery
//! incomplete.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bench::{self, BenchError, CI_TRIALS, CI_WORDS, DEFAULT_TRIALS, DEFAULT_WORDS};
use crate::hybrid::{recommended_size, HybridParams, RepetitionPreset};
use crate::lcg::{Lcg32Config, DEFAULT_SEED};
use crate::source::{GeneratorSpec, WordSource};
use crate::stattests::{run_battery_with, BatteryError, BatteryManifest, DEFAULT_ALPHA, MIN_BATTERY_WORDS};

pub const REPORT_DIR_ENV: &str = "HYBRID_RNG_REPORT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hybrid-rng",
    version,
    about = "SHA-256/LCG hybrid random number generators, test battery and benchmarks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write raw little-endian 32-bit words.
    Gen(GenArgs),
    /// Run the statistical battery on a generator.
    Test(TestArgs),
    /// Time the production of a fixed number of words.
    Bench(BenchArgs),
    /// Battery failures and timings over a grid of sizes and repetitions.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Sha,
    Lcg,
    Hybrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Conservative,
    Balanced,
    Fast,
}

impl From<Preset> for RepetitionPreset {
    fn from(p: Preset) -> Self {
        match p {
            Preset::Conservative => RepetitionPreset::Conservative,
            Preset::Balanced => RepetitionPreset::Balanced,
            Preset::Fast => RepetitionPreset::Fast,
        }
    }
}

#[derive(Debug, Args)]
pub struct LcgArgs {
    /// superduper, glibc, borland, or custom (with --multiplier and --addend).
    #[arg(long, default_value = "superduper")]
    pub lcg: String,
    /// Custom LCG multiplier (decimal or 0x hex).
    #[arg(long, value_parser = parse_u32)]
    pub multiplier: Option<u32>,
    /// Custom LCG addend (decimal or 0x hex).
    #[arg(long, value_parser = parse_u32)]
    pub addend: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u32,
}

impl LcgArgs {
    pub fn config(&self) -> Result<Lcg32Config, CliError> {
        match (self.multiplier, self.addend) {
            (Some(m), Some(a)) => Ok(Lcg32Config::from_constants(m, a)),
            (None, None) => Lcg32Config::from_name(&self.lcg).ok_or_else(|| {
                if self.lcg.eq_ignore_ascii_case("custom") {
                    usage("--lcg custom needs --multiplier and --addend")
                } else {
                    usage(format!("unknown LCG '{}'", self.lcg))
                }
            }),
            _ => Err(usage("--multiplier and --addend must be given together")),
        }
    }
}

#[derive(Debug, Args)]
pub struct GeneratorArgs {
    #[arg(long, value_enum, default_value_t = Kind::Hybrid)]
    pub kind: Kind,
    #[command(flatten)]
    pub lcg: LcgArgs,
    /// Hybrid size: crypto words per buffer.
    #[arg(long)]
    pub k: Option<u32>,
    /// Hybrid repetition: passes over each buffer.
    #[arg(long, value_parser = parse_u32_count)]
    pub n: Option<u32>,
    /// Named (k, n) choice; --k and --n override its fields.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Crypto stream id.
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Emit raw LCG states instead of the two-step 16-bit concatenation.
    #[arg(long)]
    pub raw_states: bool,
}

impl GeneratorArgs {
    pub fn spec(&self) -> Result<GeneratorSpec, CliError> {
        if self.raw_states && self.kind != Kind::Lcg {
            return Err(usage("--raw-states applies to --kind lcg only"));
        }
        match self.kind {
            Kind::Sha => Ok(GeneratorSpec::Sha { stream_id: self.stream }),
            Kind::Lcg => {
                let config = self.lcg.config()?;
                let seed = self.lcg.seed;
                Ok(if self.raw_states {
                    GeneratorSpec::LcgRaw { config, seed }
                } else {
                    GeneratorSpec::Lcg { config, seed }
                })
            }
            Kind::Hybrid => {
                let config = self.lcg.config()?;
                let base = match self.preset {
                    Some(p) => HybridParams::recommended(&config, p.into()),
                    None => HybridParams::recommended(&config, RepetitionPreset::Conservative),
                };
                let k = self.k.unwrap_or(if self.preset.is_some() {
                    base.size()
                } else {
                    recommended_size(&config)
                });
                let n = self.n.unwrap_or(base.repetition());
                let params = HybridParams::new(k, n).map_err(|e| usage(e.to_string()))?;
                Ok(GeneratorSpec::Hybrid {
                    params,
                    config,
                    seed: self.lcg.seed,
                    stream_id: self.stream,
                })
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// CSV destination.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Directory for CSV reports when --csv is absent.
    #[arg(long, env = REPORT_DIR_ENV)]
    pub report_dir: Option<PathBuf>,
}

impl ReportArgs {
    fn target(&self, file_name: &str) -> Option<PathBuf> {
        self.csv
            .clone()
            .or_else(|| self.report_dir.as_ref().map(|d| d.join(file_name)))
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Number of words (integer or 2^N); unbounded when omitted.
    #[arg(long, value_parser = parse_count)]
    pub words: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, value_parser = parse_count, default_value = "2^22")]
    pub words: u64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// Battery manifest (TOML); the built-in one when omitted.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Print the manifest as TOML and exit.
    #[arg(long)]
    pub print_manifest: bool,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Words per trial (integer or 2^N). Default 2^23, or 2^21 with --ci.
    #[arg(long, value_parser = parse_count)]
    pub words: Option<u64>,
    /// Timed trials. Default 20, or 3 with --ci.
    #[arg(long)]
    pub trials: Option<u32>,
    /// Short run for continuous integration.
    #[arg(long)]
    pub ci: bool,
    /// Run this many hybrid streams on as many threads.
    #[arg(long)]
    pub streams: Option<usize>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub lcg: LcgArgs,
    /// Sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_u32_count)]
    pub k: Vec<u32>,
    /// Repetitions, comma separated.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_u32_count)]
    pub n: Vec<u32>,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Words for both the battery and each timing trial.
    #[arg(long, value_parser = parse_count, default_value = "2^21")]
    pub words: u64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = CI_TRIALS)]
    pub trials: u32,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn runtime(msg: impl Into<String>) -> CliError {
    CliError::Runtime(msg.into())
}

impl From<BatteryError> for CliError {
    fn from(e: BatteryError) -> Self {
        match e {
            BatteryError::TooFewWords(_) | BatteryError::InvalidAlpha(_) | BatteryError::Manifest(_) => {
                usage(e.to_string())
            }
            BatteryError::Csv(_) | BatteryError::Io(_) => runtime(e.to_string()),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Csv(_) | BenchError::Io(_) => runtime(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

/// Parses `2^N` or a plain integer.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Some(exp) = s.strip_prefix("2^") {
        let e: u32 = exp.parse().map_err(|_| format!("bad exponent in '{s}'"))?;
        return 1u64
            .checked_shl(e)
            .filter(|_| e < 64)
            .ok_or_else(|| format!("'{s}' is too large"));
    }
    s.replace('_', "")
        .parse()
        .map_err(|_| format!("expected an integer or 2^N, got '{s}'"))
}

fn parse_u32_count(s: &str) -> Result<u32, String> {
    let v = parse_count(s)?;
    u32::try_from(v).map_err(|_| format!("'{s}' does not fit in 32 bits"))
}

fn parse_u32(s: &str) -> Result<u32, String> {
    let s = s.trim();
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u32::from_str_radix(hex, 16).map_err(|e| e.to_string()),
        None => s.parse().map_err(|e: std::num::ParseIntError| e.to_string()),
    }
}

fn load_manifest(path: Option<&Path>) -> Result<BatteryManifest, CliError> {
    match path {
        None => Ok(BatteryManifest::desk_v1()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| runtime(format!("cannot read {}: {e}", p.display())))?;
            Ok(BatteryManifest::from_toml(&text)?)
        }
    }
}

fn battery_words(words: u64) -> Result<usize, CliError> {
    match usize::try_from(words) {
        Ok(w) if w >= MIN_BATTERY_WORDS => Ok(w),
        _ => Err(usage(format!(
            "battery needs at least {MIN_BATTERY_WORDS} words, got {words}"
        ))),
    }
}

/// Runs `write` against the CSV target, or stdout when there is none.
fn emit_csv(
    target: Option<PathBuf>,
    stdout: &mut dyn Write,
    write: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match target {
        None => write(stdout),
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| runtime(format!("cannot create {}: {e}", dir.display())))?;
            }
            let file = File::create(&path).map_err(|e| runtime(format!("cannot create {}: {e}", path.display())))?;
            let mut out = BufWriter::new(file);
            write(&mut out)?;
            out.flush()
                .map_err(|e| runtime(format!("writing {}: {e}", path.display())))
        }
    }
}

const GEN_CHUNK: usize = 4096;

/// Writes `words` words (or forever) from `source` as little-endian bytes.
pub fn write_stream(source: &mut dyn WordSource, words: Option<u64>, out: impl Write) -> io::Result<()> {
    let mut out = BufWriter::with_capacity(1 << 16, out);
    let mut chunk = vec![0u32; GEN_CHUNK];
    let mut bytes = vec![0u8; 4 * GEN_CHUNK];
    let mut left = words;
    loop {
        let len = match left {
            Some(0) => break,
            Some(l) => l.min(GEN_CHUNK as u64) as usize,
            None => GEN_CHUNK,
        };
        source.fill(&mut chunk[..len]);
        for (b, w) in bytes.chunks_exact_mut(4).zip(&chunk[..len]) {
            b.copy_from_slice(&w.to_le_bytes());
        }
        out.write_all(&bytes[..4 * len])?;
        if let Some(l) = left.as_mut() {
            *l -= len as u64;
        }
    }
    out.flush()
}

fn cmd_gen(args: &GenArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let spec = args.generator.spec()?;
    let mut source = spec.build();
    let result = match &args.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| runtime(format!("cannot create {}: {e}", path.display())))?;
            write_stream(&mut *source, args.words, file)
        }
        None => write_stream(&mut *source, args.words, stdout),
    };
    match result {
        Ok(()) => Ok(EXIT_OK),
        // a closed reader is the normal way to end an unbounded stream
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(EXIT_OK),
        Err(e) => Err(runtime(format!("write failed: {e}"))),
    }
}

fn cmd_test(args: &TestArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let manifest = load_manifest(args.manifest.as_deref())?;
    if args.print_manifest {
        stdout
            .write_all(manifest.to_toml().as_bytes())
            .map_err(|e| runtime(e.to_string()))?;
        return Ok(EXIT_OK);
    }
    let spec = args.generator.spec()?;
    let words = battery_words(args.words)?;
    let mut source = spec.build();
    let report = run_battery_with(&manifest, &spec.to_string(), &mut *source, words, args.alpha)?;
    emit_csv(args.report.target("battery.csv"), stdout, |out| {
        Ok(report.write_csv(out)?)
    })?;
    let _ = writeln!(stderr, "{}", report.summary());
    Ok(if report.is_complete() { EXIT_OK } else { EXIT_INCOMPLETE })
}

fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let spec = args.generator.spec()?;
    let words = args.words.unwrap_or(if args.ci { CI_WORDS } else { DEFAULT_WORDS });
    let trials = args.trials.unwrap_or(if args.ci { CI_TRIALS } else { DEFAULT_TRIALS });
    let target = args.report.target("bench.csv");

    if let Some(streams) = args.streams {
        let GeneratorSpec::Hybrid {
            params,
            config,
            seed,
            stream_id,
        } = spec
        else {
            return Err(usage("--streams needs --kind hybrid"));
        };
        let rec = bench::measure_parallel(params, config, seed, stream_id, streams, words, trials)?;
        emit_csv(target, stdout, |out| Ok(bench::write_parallel_csv(&rec, out)?))?;
        let _ = writeln!(
            stderr,
            "{spec} x{streams} threads: {:.4} s wall per trial, {:.3e} words/s total",
            rec.mean_wall_seconds, rec.total_throughput
        );
        return Ok(EXIT_OK);
    }

    let rec = bench::measure_spec(&spec, words, trials)?;
    emit_csv(target, stdout, |out| {
        Ok(bench::write_csv(std::slice::from_ref(&rec), out)?)
    })?;
    let _ = writeln!(
        stderr,
        "{spec}: {} words, mean {:.4} s over {} trials, {:.3e} words/s, sink {:#010x}",
        rec.words, rec.mean_seconds, rec.trials, rec.throughput, rec.sink
    );
    Ok(EXIT_OK)
}

/// One cell of a sweep grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub k: u32,
    pub n: u32,
    pub failure_count: usize,
    pub mean_seconds: f64,
    pub complete: bool,
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "n", "failure_count", "mean_seconds"])?;
    for r in rows {
        w.write_record([
            r.k.to_string(),
            r.n.to_string(),
            r.failure_count.to_string(),
            format!("{:.6e}", r.mean_seconds),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let config = args.lcg.config()?;
    let manifest = load_manifest(args.manifest.as_deref())?;
    let words = battery_words(args.words)?;

    let mut specs = Vec::with_capacity(args.k.len() * args.n.len());
    for &k in &args.k {
        for &n in &args.n {
            let params = HybridParams::new(k, n).map_err(|e| usage(format!("invalid grid: {e}")))?;
            specs.push(GeneratorSpec::Hybrid {
                params,
                config,
                seed: args.lcg.seed,
                stream_id: args.stream,
            });
        }
    }

    let timings = bench::measure_interleaved(&specs, args.words, args.trials)?;
    let mut rows = Vec::with_capacity(specs.len());
    for (spec, timing) in specs.iter().zip(&timings) {
        let mut source = spec.build();
        let report = run_battery_with(&manifest, &spec.to_string(), &mut *source, words, args.alpha)?;
        let params = spec.params().expect("hybrid spec");
        let row = SweepRow {
            k: params.size(),
            n: params.repetition(),
            failure_count: report.failure_count,
            mean_seconds: timing.mean_seconds,
            complete: report.is_complete(),
        };
        let _ = writeln!(
            stderr,
            "k={} n={}: failure_count={} mean_seconds={:.4e}{}",
            row.k,
            row.n,
            row.failure_count,
            row.mean_seconds,
            if row.complete { "" } else { " (incomplete)" }
        );
        rows.push(row);
    }
    emit_csv(args.report.target("sweep.csv"), stdout, |out| {
        write_sweep_csv(&rows, out).map_err(|e| runtime(e.to_string()))
    })?;
    Ok(if rows.iter().all(|r| r.complete) {
        EXIT_OK
    } else {
        EXIT_INCOMPLETE
    })
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, stdout),
        Command::Test(a) => cmd_test(a, stdout, stderr),
        Command::Bench(a) => cmd_bench(a, stdout, stderr),
        Command::Sweep(a) => cmd_sweep(a, stdout, stderr),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let code = match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "hybrid-rng: {e}");
            e.exit_code()
        }
    };
    let _ = stdout.flush();
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, Vec<u8>, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["hybrid-rng"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, out, String::from_utf8(err).unwrap())
    }

    fn spec_of(args: &[&str]) -> Result<GeneratorSpec, CliError> {
        let mut argv = vec!["hybrid-rng", "gen"];
        argv.extend_from_slice(args);
        match Cli::try_parse_from(argv).unwrap().command {
            Command::Gen(g) => g.generator.spec(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("2^21"), Ok(1 << 21));
        assert_eq!(parse_count("1000"), Ok(1000));
        assert_eq!(parse_count("1_000"), Ok(1000));
        assert!(parse_count("2^64").is_err());
        assert!(parse_count("lots").is_err());
        assert_eq!(parse_u32("0x10DCD"), Ok(69069));
    }

    #[test]
    fn generator_defaults() {
        let spec = spec_of(&[]).unwrap();
        assert_eq!(spec.to_string(), "hybrid(superduper, k=16, n=16, seed=1, stream=0)");
        let glibc = spec_of(&["--lcg", "glibc"]).unwrap();
        assert_eq!(glibc.params().unwrap().size(), 32);
        let fast = spec_of(&["--preset", "fast", "--k", "4"]).unwrap();
        assert_eq!(fast.params().unwrap().size(), 4);
        assert_eq!(fast.params().unwrap().repetition(), 256);
        let custom = spec_of(&["--kind", "lcg", "--multiplier", "5", "--addend", "3"]).unwrap();
        assert_eq!(custom.lcg().unwrap().multiplier, 5);
        let raw = spec_of(&["--kind", "lcg", "--raw-states"]).unwrap();
        assert!(matches!(raw, GeneratorSpec::LcgRaw { .. }));
    }

    #[test]
    fn generator_usage_errors() {
        for args in [
            &["--k", "0"][..],
            &["--n", "0"],
            &["--lcg", "nope"],
            &["--lcg", "custom"],
            &["--multiplier", "5"],
            &["--raw-states"],
        ] {
            let err = spec_of(args).unwrap_err();
            assert_eq!(err.exit_code(), EXIT_USAGE, "{args:?}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&[]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["gen", "--kind", "md5"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
        assert_eq!(run_capture(&["test", "--words", "1000"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["bench", "--trials", "2"]).0, EXIT_USAGE);
        let (code, _, err) = run_capture(&["gen", "--words", "1", "--output", "/nonexistent/dir/out.bin"]);
        assert_eq!(code, EXIT_RUNTIME);
        assert!(err.contains("cannot create"));
    }

    #[test]
    fn gen_bytes() {
        let (code, out, _) = run_capture(&[
            "gen",
            "--kind",
            "lcg",
            "--lcg",
            "superduper",
            "--seed",
            "1",
            "--words",
            "1",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, [0x59, 0x1C, 0x01, 0x00]);
        let (code, out, _) = run_capture(&["gen", "--words", "0"]);
        assert_eq!((code, out.len()), (0, 0));
    }

    #[test]
    fn print_manifest_round_trips() {
        let (code, out, _) = run_capture(&["test", "--print-manifest"]);
        assert_eq!(code, 0);
        let m = BatteryManifest::from_toml(std::str::from_utf8(&out).unwrap()).unwrap();
        assert_eq!(m, BatteryManifest::desk_v1());
    }

    #[test]
    fn sweep_csv_header() {
        let rows = [SweepRow {
            k: 1,
            n: 16,
            failure_count: 2,
            mean_seconds: 0.5,
            complete: true,
        }];
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "k,n,failure_count,mean_seconds\n1,16,2,5.000000e-1\n"
        );
    }
}

//! Throughput harness: wall-clock time to produce a fixed number of words,
//! averaged over trials after one discarded warm-up.
//!
//! Every output word is folded into a 32-bit XOR accumulator that is passed
//! through [`std::hint::black_box`] and reported, so generation cannot be
//! optimised away.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use thiserror::Error;

use crate::hybrid::{HybridError, HybridGenerator, HybridParams, ShaGenerator};
use crate::lcg::{Lcg32, Lcg32Config, RawLcg32, DEFAULT_SEED};
use crate::source::{GeneratorKind, GeneratorSpec, WordSource};

pub const DEFAULT_WORDS: u64 = 1 << 23;
pub const CI_WORDS: u64 = 1 << 21;
pub const MIN_WORDS: u64 = 1 << 20;
pub const DEFAULT_TRIALS: u32 = 20;
pub const MIN_TRIALS: u32 = 3;
pub const CI_TRIALS: u32 = 3;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("need at least {MIN_WORDS} words per trial, got {0}")]
    TooFewWords(u64),
    #[error("need at least {MIN_TRIALS} trials, got {0}")]
    TooFewTrials(u32),
    #[error("repetition list must be non-empty and ascending")]
    BadSweep,
    #[error("need at least one stream")]
    NoStreams,
    #[error(transparent)]
    Params(#[from] HybridError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// What was measured, as it appears in CSV output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDescriptor {
    pub kind: GeneratorKind,
    pub lcg: Option<&'static str>,
    pub k: Option<u32>,
    pub n: Option<u32>,
}

impl From<&GeneratorSpec> for GeneratorDescriptor {
    fn from(spec: &GeneratorSpec) -> Self {
        Self {
            kind: spec.kind(),
            lcg: spec.lcg().map(|c| c.name),
            k: spec.params().map(|p| p.size()),
            n: spec.params().map(|p| p.repetition()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub descriptor: GeneratorDescriptor,
    pub words: u64,
    pub trials: u32,
    pub per_trial_seconds: Vec<f64>,
    pub mean_seconds: f64,
    /// Words per second, `words / mean_seconds`.
    pub throughput: f64,
    /// XOR of every word produced in one trial.
    pub sink: u32,
}

const CHUNK: usize = 1024;

/// Generates `words` words in fixed-size chunks and XOR-folds them.
#[inline(never)]
fn produce<G: WordSource>(generator: &mut G, words: u64) -> u32 {
    let mut chunk = [0u32; CHUNK];
    let mut left = words;
    let mut acc = 0u32;
    while left > 0 {
        let len = left.min(CHUNK as u64) as usize;
        generator.fill(&mut chunk[..len]);
        acc = chunk[..len].iter().fold(acc, |a, &w| a ^ w);
        left -= len as u64;
    }
    acc
}

fn timed_trial<G: WordSource>(generator: &mut G, words: u64) -> (f64, u32) {
    let start = Instant::now();
    let sink = black_box(produce(black_box(generator), words));
    (start.elapsed().as_secs_f64(), sink)
}

fn check_sizes(words: u64, trials: u32) -> Result<(), BenchError> {
    if words < MIN_WORDS {
        return Err(BenchError::TooFewWords(words));
    }
    if trials < MIN_TRIALS {
        return Err(BenchError::TooFewTrials(trials));
    }
    Ok(())
}

/// Times `trials` runs of `words` words, each on a fresh generator from
/// `factory`, after one untimed warm-up run.
pub fn measure_throughput<G, F>(
    descriptor: GeneratorDescriptor,
    mut factory: F,
    words: u64,
    trials: u32,
) -> Result<BenchRecord, BenchError>
where
    G: WordSource,
    F: FnMut() -> G,
{
    check_sizes(words, trials)?;
    let mut warm = factory();
    let (_, warm_sink) = timed_trial(&mut warm, words);

    let mut per_trial_seconds = Vec::with_capacity(trials as usize);
    let mut sink = warm_sink;
    for _ in 0..trials {
        let mut g = factory();
        let (secs, s) = timed_trial(&mut g, words);
        per_trial_seconds.push(secs);
        sink = s;
    }
    let mean_seconds = per_trial_seconds.iter().sum::<f64>() / f64::from(trials);
    Ok(BenchRecord {
        descriptor,
        words,
        trials,
        per_trial_seconds,
        mean_seconds,
        throughput: words as f64 / mean_seconds,
        sink,
    })
}

/// [`measure_throughput`] for a [`GeneratorSpec`], dispatched to the concrete
/// generator type so the inner loop is monomorphised.
pub fn measure_spec(spec: &GeneratorSpec, words: u64, trials: u32) -> Result<BenchRecord, BenchError> {
    let d = GeneratorDescriptor::from(spec);
    match *spec {
        GeneratorSpec::Sha { stream_id } => measure_throughput(d, || ShaGenerator::new(stream_id), words, trials),
        GeneratorSpec::Lcg { config, seed } => measure_throughput(d, || Lcg32::new(config, seed), words, trials),
        GeneratorSpec::LcgRaw { config, seed } => measure_throughput(d, || RawLcg32::new(config, seed), words, trials),
        GeneratorSpec::Hybrid {
            params,
            config,
            seed,
            stream_id,
        } => measure_throughput(
            d,
            || HybridGenerator::new(params, config, seed, stream_id),
            words,
            trials,
        ),
    }
}

/// One timed trial on a fresh generator built from `spec`.
fn spec_trial(spec: &GeneratorSpec, words: u64) -> (f64, u32) {
    match *spec {
        GeneratorSpec::Sha { stream_id } => timed_trial(&mut ShaGenerator::new(stream_id), words),
        GeneratorSpec::Lcg { config, seed } => timed_trial(&mut Lcg32::new(config, seed), words),
        GeneratorSpec::LcgRaw { config, seed } => timed_trial(&mut RawLcg32::new(config, seed), words),
        GeneratorSpec::Hybrid {
            params,
            config,
            seed,
            stream_id,
        } => timed_trial(&mut HybridGenerator::new(params, config, seed, stream_id), words),
    }
}

/// One record per repetition value for a fixed size and LCG (seed 1,
/// stream 0).
///
/// Trials are interleaved (see [`measure_interleaved`]), so slow
/// drift in machine load is spread over the whole sweep instead of landing on
/// a few neighbouring points.
pub fn sweep_repetition(
    lcg_config: Lcg32Config,
    k: u32,
    repetitions: &[u32],
    words: u64,
    trials: u32,
) -> Result<Vec<BenchRecord>, BenchError> {
    if repetitions.is_empty() || repetitions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BenchError::BadSweep);
    }
    check_sizes(words, trials)?;
    let specs = repetitions
        .iter()
        .map(|&n| {
            Ok(GeneratorSpec::Hybrid {
                params: HybridParams::new(k, n)?,
                config: lcg_config,
                seed: DEFAULT_SEED,
                stream_id: 0,
            })
        })
        .collect::<Result<Vec<_>, BenchError>>()?;

    measure_interleaved(&specs, words, trials)
}

/// Measures several generators with their trials interleaved round-robin.
/// Each record obeys the same rules as [`measure_spec`].
pub fn measure_interleaved(specs: &[GeneratorSpec], words: u64, trials: u32) -> Result<Vec<BenchRecord>, BenchError> {
    check_sizes(words, trials)?;
    let mut sinks: Vec<u32> = specs.iter().map(|s| spec_trial(s, words).1).collect();
    let mut seconds = vec![Vec::with_capacity(trials as usize); specs.len()];
    for _ in 0..trials {
        for (i, spec) in specs.iter().enumerate() {
            let (secs, sink) = spec_trial(spec, words);
            seconds[i].push(secs);
            sinks[i] = sink;
        }
    }
    Ok(specs
        .iter()
        .zip(seconds)
        .zip(sinks)
        .map(|((spec, per_trial_seconds), sink)| {
            let mean_seconds = per_trial_seconds.iter().sum::<f64>() / f64::from(trials);
            BenchRecord {
                descriptor: GeneratorDescriptor::from(spec),
                words,
                trials,
                per_trial_seconds,
                mean_seconds,
                throughput: words as f64 / mean_seconds,
                sink,
            }
        })
        .collect())
}

pub const CSV_HEADER: [&str; 9] = [
    "kind",
    "lcg",
    "k",
    "n",
    "words",
    "trials",
    "mean_seconds",
    "throughput",
    "sink",
];

/// Writes records with columns
/// `kind,lcg,k,n,words,trials,mean_seconds,throughput,sink`.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        w.write_record([
            r.descriptor.kind.as_str().to_owned(),
            r.descriptor.lcg.unwrap_or("").to_owned(),
            opt(r.descriptor.k),
            opt(r.descriptor.n),
            r.words.to_string(),
            r.trials.to_string(),
            format!("{:.6e}", r.mean_seconds),
            format!("{:.6e}", r.throughput),
            format!("{:#010x}", r.sink),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Aggregate throughput of `streams` hybrid streams on as many threads.
#[derive(Clone, Debug, PartialEq)]
pub struct ParallelBenchRecord {
    pub streams: usize,
    pub words_per_stream: u64,
    pub trials: u32,
    /// Mean seconds each stream's thread spent generating.
    pub per_stream_mean_seconds: Vec<f64>,
    /// Mean wall time of a trial, all threads included.
    pub mean_wall_seconds: f64,
    pub total_throughput: f64,
    pub sinks: Vec<u32>,
}

impl ParallelBenchRecord {
    pub fn per_stream_throughput(&self) -> Vec<f64> {
        self.per_stream_mean_seconds
            .iter()
            .map(|s| self.words_per_stream as f64 / s)
            .collect()
    }
}

/// Writes one row per stream plus a final `total` row, with columns
/// `stream,words,trials,mean_seconds,throughput,sink`. The total row uses the
/// mean wall time, the aggregate throughput and the XOR of all sinks.
pub fn write_parallel_csv<W: Write>(record: &ParallelBenchRecord, out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["stream", "words", "trials", "mean_seconds", "throughput", "sink"])?;
    let words = record.words_per_stream.to_string();
    let trials = record.trials.to_string();
    for (j, (secs, sink)) in record.per_stream_mean_seconds.iter().zip(&record.sinks).enumerate() {
        w.write_record([
            j.to_string(),
            words.clone(),
            trials.clone(),
            format!("{secs:.6e}"),
            format!("{:.6e}", record.words_per_stream as f64 / secs),
            format!("{sink:#010x}"),
        ])?;
    }
    w.write_record([
        "total".to_owned(),
        (record.words_per_stream * record.streams as u64).to_string(),
        trials,
        format!("{:.6e}", record.mean_wall_seconds),
        format!("{:.6e}", record.total_throughput),
        format!("{:#010x}", record.sinks.iter().fold(0, |a, s| a ^ s)),
    ])?;
    w.flush()?;
    Ok(())
}

pub fn measure_parallel(
    params: HybridParams,
    lcg_config: Lcg32Config,
    base_seed: u32,
    base_stream_id: u64,
    streams: usize,
    words_per_stream: u64,
    trials: u32,
) -> Result<ParallelBenchRecord, BenchError> {
    if streams == 0 {
        return Err(BenchError::NoStreams);
    }
    check_sizes(words_per_stream, trials)?;
    // validates the stream id range once up front
    crate::hybrid::make_parallel_streams(params, lcg_config, base_seed, base_stream_id, streams)?;

    let run = || -> (f64, Vec<(f64, u32)>) {
        let gens = crate::hybrid::make_parallel_streams(params, lcg_config, base_seed, base_stream_id, streams)
            .expect("validated above");
        let start = Instant::now();
        let per: Vec<(f64, u32)> = std::thread::scope(|scope| {
            let handles: Vec<_> = gens
                .into_iter()
                .map(|mut g| scope.spawn(move || timed_trial(&mut g, words_per_stream)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("bench thread")).collect()
        });
        (start.elapsed().as_secs_f64(), per)
    };

    run();
    let mut wall = 0.0;
    let mut per_stream = vec![0.0; streams];
    let mut sinks = vec![0u32; streams];
    for _ in 0..trials {
        let (w, per) = run();
        wall += w;
        for (j, (secs, sink)) in per.into_iter().enumerate() {
            per_stream[j] += secs;
            sinks[j] = sink;
        }
    }
    let t = f64::from(trials);
    let mean_wall_seconds = wall / t;
    Ok(ParallelBenchRecord {
        streams,
        words_per_stream,
        trials,
        per_stream_mean_seconds: per_stream.into_iter().map(|s| s / t).collect(),
        mean_wall_seconds,
        total_throughput: (streams as u64 * words_per_stream) as f64 / mean_wall_seconds,
        sinks,
    })
}

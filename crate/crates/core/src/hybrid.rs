//! The combined generator: `k` buffered crypto words, each XORed with `n`
//! successive LCG words before the buffer is refreshed.
//!
//! Output `t` (0-based) is
//!
//! ```text
//! crypto[(t / (k*n)) * k + t % k]  XOR  lcg_word[t]
//! ```
//!
//! so the buffer is walked `n` times in order, then replaced by the next `k`
//! words of the counter-mode stream. Buffers draw from the continuous crypto
//! word stream, so when `k` is not a multiple of 8 the tail of one SHA-256
//! block carries into the next buffer. A refresh happens lazily, on the read
//! after the last pass completes.

use thiserror::Error;

use crate::crypto_source::{CounterBlockSource, WORDS_PER_BLOCK};
use crate::lcg::{Lcg32, Lcg32Config, Lcg32State};
use crate::source::WordSource;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HybridError {
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("repetition must be at least 1")]
    ZeroRepetition,
    #[error("stream count must be at least 1")]
    ZeroStreams,
    #[error("stream id {base} + {count} streams overflows 64 bits")]
    StreamIdOverflow { base: u64, count: u64 },
    #[error("need {needed} crypto words, got {got}")]
    InsufficientCrypto { needed: usize, got: usize },
    #[error("invalid checkpoint: {0}")]
    Checkpoint(&'static str),
}

/// Size `k` (buffered crypto words) and repetition `n` (passes per buffer).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HybridParams {
    size: u32,
    repetition: u32,
}

impl HybridParams {
    pub fn new(size: u32, repetition: u32) -> Result<Self, HybridError> {
        if size == 0 {
            return Err(HybridError::ZeroSize);
        }
        if repetition == 0 {
            return Err(HybridError::ZeroRepetition);
        }
        Ok(Self { size, repetition })
    }

    /// Recommended size for `config` with the given repetition preset.
    pub fn recommended(config: &Lcg32Config, preset: RepetitionPreset) -> Self {
        Self {
            size: recommended_size(config),
            repetition: preset.repetition(),
        }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn repetition(&self) -> u32 {
        self.repetition
    }

    /// Output words produced per buffer, `k * n`.
    pub fn words_per_buffer(&self) -> u64 {
        u64::from(self.size) * u64::from(self.repetition)
    }

    /// SHA-256 evaluations needed to produce `words` outputs.
    ///
    /// The first buffer is filled on construction, so zero words still cost
    /// one buffer.
    pub fn hash_invocations_for(&self, words: u64) -> u64 {
        let buffers = words.div_ceil(self.words_per_buffer()).max(1);
        (buffers * u64::from(self.size)).div_ceil(WORDS_PER_BLOCK as u64)
    }
}

/// Size 32 for glibc `rand`, 16 otherwise.
pub fn recommended_size(config: &Lcg32Config) -> u32 {
    if config.multiplier == Lcg32Config::GLIBC.multiplier && config.addend == Lcg32Config::GLIBC.addend {
        32
    } else {
        16
    }
}

/// Named repetition choices trading quality for speed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepetitionPreset {
    /// n = 16: passes everything the full battery throws at it.
    Conservative,
    /// n = 128: a couple of suspect statistics, within a few percent of LCG speed.
    Balanced,
    /// n = 256: LCG speed.
    Fast,
}

impl RepetitionPreset {
    pub fn repetition(&self) -> u32 {
        match self {
            RepetitionPreset::Conservative => 16,
            RepetitionPreset::Balanced => 128,
            RepetitionPreset::Fast => 256,
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "conservative" => Some(RepetitionPreset::Conservative),
            "balanced" => Some(RepetitionPreset::Balanced),
            "fast" => Some(RepetitionPreset::Fast),
            _ => None,
        }
    }
}

/// Pure counter-mode SHA-256 word stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShaGenerator {
    source: CounterBlockSource,
}

impl ShaGenerator {
    pub fn new(stream_id: u64) -> Self {
        Self {
            source: CounterBlockSource::new(stream_id),
        }
    }

    pub fn source(&self) -> &CounterBlockSource {
        &self.source
    }
}

impl WordSource for ShaGenerator {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.source.next_crypto_u32()
    }

    fn fill(&mut self, dest: &mut [u32]) {
        self.source.fill(dest)
    }
}

pub fn pure_sha_generator(stream_id: u64) -> ShaGenerator {
    ShaGenerator::new(stream_id)
}

pub fn pure_lcg_generator(config: Lcg32Config, seed: u32) -> Lcg32 {
    Lcg32::new(config, seed)
}

/// SHA-256/LCG combined generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HybridGenerator {
    params: HybridParams,
    crypto: CounterBlockSource,
    buffer: Box<[u32]>,
    /// Completed passes over the current buffer, `0..=n`.
    pass: u32,
    /// Position within the current pass, `0..k`.
    pos: usize,
    lcg: Lcg32,
}

impl HybridGenerator {
    pub fn new(params: HybridParams, lcg_config: Lcg32Config, lcg_seed: u32, stream_id: u64) -> Self {
        let mut crypto = CounterBlockSource::new(stream_id);
        let mut buffer = vec![0u32; params.size as usize].into_boxed_slice();
        crypto.fill(&mut buffer);
        Self {
            params,
            crypto,
            buffer,
            pass: 0,
            pos: 0,
            lcg: Lcg32::new(lcg_config, lcg_seed),
        }
    }

    pub fn params(&self) -> HybridParams {
        self.params
    }

    pub fn stream_id(&self) -> u64 {
        self.crypto.stream_id()
    }

    pub fn lcg_config(&self) -> &Lcg32Config {
        self.lcg.config()
    }

    pub fn lcg_state(&self) -> Lcg32State {
        self.lcg.state()
    }

    pub fn buffer(&self) -> &[u32] {
        &self.buffer
    }

    /// SHA-256 evaluations so far, including the initial fill.
    pub fn hash_invocations(&self) -> u64 {
        self.crypto.hash_invocations()
    }

    /// Output words produced so far, derived from the crypto stream position.
    pub fn words_emitted(&self) -> u64 {
        let buffers = self.crypto.words_consumed() / u64::from(self.params.size);
        (buffers - 1) * self.params.words_per_buffer()
            + u64::from(self.pass) * u64::from(self.params.size)
            + self.pos as u64
    }

    /// LCG recurrence applications so far (two per output word).
    pub fn lcg_steps(&self) -> u64 {
        2 * self.words_emitted()
    }

    #[cold]
    fn refill(&mut self) {
        self.crypto.fill(&mut self.buffer);
        self.pass = 0;
    }

    /// Serialises the generator position. All integers are big-endian:
    ///
    /// ```text
    /// k u32 | n u32 | stream_id u64 | counter u64 | index u32 |
    /// buffer k*u32 | pass u32 | pos u32 | lcg_state u32 |
    /// lcg_multiplier u32 | lcg_addend u32
    /// ```
    pub fn checkpoint(&self) -> Vec<u8> {
        let k = self.params.size as usize;
        let mut out = Vec::with_capacity(checkpoint_len(k));
        out.extend_from_slice(&self.params.size.to_be_bytes());
        out.extend_from_slice(&self.params.repetition.to_be_bytes());
        out.extend_from_slice(&self.crypto.stream_id().to_be_bytes());
        out.extend_from_slice(&self.crypto.counter().to_be_bytes());
        out.extend_from_slice(&(self.crypto.index() as u32).to_be_bytes());
        for w in self.buffer.iter() {
            out.extend_from_slice(&w.to_be_bytes());
        }
        out.extend_from_slice(&self.pass.to_be_bytes());
        out.extend_from_slice(&(self.pos as u32).to_be_bytes());
        out.extend_from_slice(&self.lcg.state().0.to_be_bytes());
        out.extend_from_slice(&self.lcg.config().multiplier.to_be_bytes());
        out.extend_from_slice(&self.lcg.config().addend.to_be_bytes());
        out
    }

    /// Inverse of [`checkpoint`](Self::checkpoint).
    pub fn restore(bytes: &[u8]) -> Result<Self, HybridError> {
        let mut r = Reader(bytes);
        let size = r.u32()?;
        let repetition = r.u32()?;
        let params = HybridParams::new(size, repetition)?;
        let k = size as usize;
        if bytes.len() != checkpoint_len(k) {
            return Err(HybridError::Checkpoint("length does not match size"));
        }
        let stream_id = r.u64()?;
        let counter = r.u64()?;
        let index = r.u32()? as usize;
        let crypto = CounterBlockSource::resume(stream_id, counter, index)
            .ok_or(HybridError::Checkpoint("counter/index out of range"))?;
        let buffer = (0..k).map(|_| r.u32()).collect::<Result<Box<[u32]>, _>>()?;
        let pass = r.u32()?;
        let pos = r.u32()? as usize;
        if pass > repetition || pos >= k || (pass == repetition && pos != 0) {
            return Err(HybridError::Checkpoint("pass/pos out of range"));
        }
        let consumed = crypto.words_consumed();
        if consumed == 0 || consumed % u64::from(size) != 0 {
            return Err(HybridError::Checkpoint("crypto position not on a buffer boundary"));
        }
        let state = r.u32()?;
        let config = Lcg32Config::from_constants(r.u32()?, r.u32()?);
        let mut lcg = Lcg32::new(config, 0);
        lcg.set_state(Lcg32State(state));
        Ok(Self {
            params,
            crypto,
            buffer,
            pass,
            pos,
            lcg,
        })
    }
}

fn checkpoint_len(k: usize) -> usize {
    4 + 4 + 8 + 8 + 4 + 4 * k + 4 + 4 + 4 + 4 + 4
}

struct Reader<'a>(&'a [u8]);

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N], HybridError> {
        if self.0.len() < N {
            return Err(HybridError::Checkpoint("truncated"));
        }
        let (head, tail) = self.0.split_at(N);
        self.0 = tail;
        Ok(head.try_into().expect("split length"))
    }

    fn u32(&mut self) -> Result<u32, HybridError> {
        self.take::<4>().map(u32::from_be_bytes)
    }

    fn u64(&mut self) -> Result<u64, HybridError> {
        self.take::<8>().map(u64::from_be_bytes)
    }
}

impl WordSource for HybridGenerator {
    #[inline(always)]
    fn next_u32(&mut self) -> u32 {
        if self.pass == self.params.repetition {
            self.refill();
        }
        let c = self.buffer[self.pos];
        self.pos += 1;
        if self.pos == self.buffer.len() {
            self.pos = 0;
            self.pass += 1;
        }
        c ^ self.lcg.next_u32()
    }

    fn fill(&mut self, mut dest: &mut [u32]) {
        let k = self.buffer.len();
        while !dest.is_empty() {
            if self.pass == self.params.repetition {
                self.refill();
            }
            let run = (k - self.pos).min(dest.len());
            let (head, tail) = dest.split_at_mut(run);
            for (d, &c) in head.iter_mut().zip(&self.buffer[self.pos..self.pos + run]) {
                *d = c ^ self.lcg.next_u32();
            }
            self.pos += run;
            if self.pos == k {
                self.pos = 0;
                self.pass += 1;
            }
            dest = tail;
        }
    }
}

/// Direct evaluation of the combining schedule over pre-collected streams.
///
/// Output `t` is `crypto[(t / (k*n)) * k + t % k] ^ lcg[t]`; the result has
/// the length of `lcg_words`.
pub fn reference_combine(
    params: HybridParams,
    crypto_words: &[u32],
    lcg_words: &[u32],
) -> Result<Vec<u32>, HybridError> {
    let k = params.size as usize;
    let per_buffer = k * params.repetition as usize;
    let needed = k * lcg_words.len().div_ceil(per_buffer);
    if crypto_words.len() < needed {
        return Err(HybridError::InsufficientCrypto {
            needed,
            got: crypto_words.len(),
        });
    }
    let mut out = Vec::with_capacity(lcg_words.len());
    for (t, &l) in lcg_words.iter().enumerate() {
        let generation = t / per_buffer;
        let slot = t % k;
        out.push(crypto_words[generation * k + slot] ^ l);
    }
    Ok(out)
}

/// `count` generators where generator `j` uses stream id `base_stream_id + j`
/// and LCG seed `base_lcg_seed + j` (wrapping).
///
/// Seed offsetting is a pragmatic way to decorrelate the LCG halves; the
/// independence of the streams rests on the distinct stream ids.
pub fn make_parallel_streams(
    params: HybridParams,
    lcg_config: Lcg32Config,
    base_lcg_seed: u32,
    base_stream_id: u64,
    count: usize,
) -> Result<Vec<HybridGenerator>, HybridError> {
    if count == 0 {
        return Err(HybridError::ZeroStreams);
    }
    let overflow = HybridError::StreamIdOverflow {
        base: base_stream_id,
        count: count as u64,
    };
    base_stream_id.checked_add(count as u64 - 1).ok_or(overflow)?;
    Ok((0..count)
        .map(|j| {
            HybridGenerator::new(
                params,
                lcg_config,
                base_lcg_seed.wrapping_add(j as u32),
                base_stream_id + j as u64,
            )
        })
        .collect())
}

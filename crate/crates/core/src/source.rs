//! Word-stream abstraction shared by the generators, the battery and the
//! benchmark harness.

use std::fmt;

use crate::hybrid::{HybridGenerator, HybridParams, ShaGenerator};
use crate::lcg::{Lcg32, Lcg32Config, RawLcg32};

/// Anything that yields a stream of 32-bit words.
pub trait WordSource {
    fn next_u32(&mut self) -> u32;

    fn fill(&mut self, dest: &mut [u32]) {
        for w in dest {
            *w = self.next_u32();
        }
    }

    fn take_words(&mut self, count: usize) -> Vec<u32>
    where
        Self: Sized,
    {
        let mut out = vec![0; count];
        self.fill(&mut out);
        out
    }
}

impl<S: WordSource + ?Sized> WordSource for &mut S {
    #[inline(always)]
    fn next_u32(&mut self) -> u32 {
        (**self).next_u32()
    }

    fn fill(&mut self, dest: &mut [u32]) {
        (**self).fill(dest)
    }
}

impl<S: WordSource + ?Sized> WordSource for Box<S> {
    #[inline(always)]
    fn next_u32(&mut self) -> u32 {
        (**self).next_u32()
    }

    fn fill(&mut self, dest: &mut [u32]) {
        (**self).fill(dest)
    }
}

/// Family of a generator, as reported in CSV output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Sha,
    Lcg,
    LcgRaw,
    Hybrid,
}

impl GeneratorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GeneratorKind::Sha => "sha",
            GeneratorKind::Lcg => "lcg",
            GeneratorKind::LcgRaw => "lcg-raw",
            GeneratorKind::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A fully specified, reproducible generator configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Sha {
        stream_id: u64,
    },
    Lcg {
        config: Lcg32Config,
        seed: u32,
    },
    /// Raw LCG states, one step per word.
    LcgRaw {
        config: Lcg32Config,
        seed: u32,
    },
    Hybrid {
        params: HybridParams,
        config: Lcg32Config,
        seed: u32,
        stream_id: u64,
    },
}

impl GeneratorSpec {
    pub fn kind(&self) -> GeneratorKind {
        match self {
            GeneratorSpec::Sha { .. } => GeneratorKind::Sha,
            GeneratorSpec::Lcg { .. } => GeneratorKind::Lcg,
            GeneratorSpec::LcgRaw { .. } => GeneratorKind::LcgRaw,
            GeneratorSpec::Hybrid { .. } => GeneratorKind::Hybrid,
        }
    }

    pub fn lcg(&self) -> Option<&Lcg32Config> {
        match self {
            GeneratorSpec::Sha { .. } => None,
            GeneratorSpec::Lcg { config, .. }
            | GeneratorSpec::LcgRaw { config, .. }
            | GeneratorSpec::Hybrid { config, .. } => Some(config),
        }
    }

    pub fn params(&self) -> Option<HybridParams> {
        match self {
            GeneratorSpec::Hybrid { params, .. } => Some(*params),
            _ => None,
        }
    }

    /// Builds a boxed generator. Use the concrete types directly on hot paths.
    pub fn build(&self) -> Box<dyn WordSource + Send> {
        match *self {
            GeneratorSpec::Sha { stream_id } => Box::new(ShaGenerator::new(stream_id)),
            GeneratorSpec::Lcg { config, seed } => Box::new(Lcg32::new(config, seed)),
            GeneratorSpec::LcgRaw { config, seed } => Box::new(RawLcg32::new(config, seed)),
            GeneratorSpec::Hybrid {
                params,
                config,
                seed,
                stream_id,
            } => Box::new(HybridGenerator::new(params, config, seed, stream_id)),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Sha { stream_id } => write!(f, "sha(stream={stream_id})"),
            GeneratorSpec::Lcg { config, seed } => write!(f, "lcg({config}, seed={seed})"),
            GeneratorSpec::LcgRaw { config, seed } => {
                write!(f, "lcg-raw({config}, seed={seed})")
            }
            GeneratorSpec::Hybrid {
                params,
                config,
                seed,
                stream_id,
            } => write!(
                f,
                "hybrid({config}, k={}, n={}, seed={seed}, stream={stream_id})",
                params.size(),
                params.repetition()
            ),
        }
    }
}

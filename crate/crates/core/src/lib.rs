//! Hybrid random number generators built from a counter-mode SHA-256 block
//! source XOR-combined with classic 32-bit linear congruential generators.
//!
//! The crate is organised around a handful of modules:
//!
//! - [`lcg`]: the three power-of-two-modulus LCGs and the high-16-bit
//!   concatenation that turns two steps into one output word.
//! - [`crypto_source`]: SHA-256 in counter mode, eight words per hash, with
//!   per-stream message derivation.
//! - [`hybrid`]: the combined generator parameterised by *size* (buffered
//!   crypto words) and *repetition* (passes over the buffer).
//! - [`stattests`]: a desk-scale statistical battery.
//! - [`bench`]: a throughput harness.
//! - [`cli`]: the `hybrid-rng` command line front end.

pub mod bench;
pub mod cli;
pub mod crypto_source;
pub mod hybrid;
pub mod lcg;
pub mod source;
pub mod special;
pub mod stattests;

pub use crypto_source::{derive_message, sha256, CounterBlockSource};
pub use hybrid::{
    make_parallel_streams, pure_lcg_generator, pure_sha_generator, reference_combine, HybridError, HybridGenerator,
    HybridParams, RepetitionPreset, ShaGenerator,
};
pub use lcg::{bit_period, Lcg32, Lcg32Config, Lcg32State, RawLcg32};
pub use source::{GeneratorSpec, WordSource};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;

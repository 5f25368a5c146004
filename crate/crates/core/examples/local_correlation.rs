//! Lag profile of a small-size, high-repetition hybrid stream.
//!
//! Within one buffer the crypto word at offset `t % k` is reused every `k`
//! outputs, so `out[t] ^ out[t + k]` equals the XOR of two LCG words. This
//! prints how often that holds, and the lag autocorrelation p-values, for a
//! weak and a recommended configuration.
//!
//! cargo run --release --example local_correlation

use hybrid_rng::stattests::{lag_autocorrelation, DEFAULT_ALPHA};
use hybrid_rng::{HybridGenerator, HybridParams, Lcg32, Lcg32Config, WordSource};

const WORDS: usize = 1 << 22;

fn profile(k: u32, n: u32) {
    let cfg = Lcg32Config::SUPER_DUPER;
    let out = HybridGenerator::new(HybridParams::new(k, n).unwrap(), cfg, 1, 0).take_words(WORDS);
    let lcg = Lcg32::new(cfg, 1).take_words(WORDS);
    let k = k as usize;
    let masked = (0..WORDS - k)
        .filter(|&t| out[t] ^ out[t + k] == lcg[t] ^ lcg[t + k])
        .count();
    println!(
        "k={k} n={n}: crypto mask cancels at lag k for {:.4} of positions",
        masked as f64 / (WORDS - k) as f64
    );
    for lag in 1..=8 {
        let r = lag_autocorrelation(&out, lag, DEFAULT_ALPHA).unwrap();
        println!(
            "  lag {lag:>2}: r={:+.2e} p={:.3} {}",
            r.statistic, r.p_value, r.verdict
        );
    }
}

fn main() {
    profile(2, 1 << 14);
    profile(16, 16);
}

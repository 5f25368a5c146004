//! 32-bit linear congruential generators with modulus 2^32.
//!
//! All arithmetic wraps modulo 2^32. One output word is built from two
//! consecutive steps: the top 16 bits of the first new state form the high
//! half and the top 16 bits of the second new state form the low half. The
//! low-order bits of a power-of-two-modulus LCG have short periods (bit `b`
//! repeats every `2^(b+1)` steps), which [`bit_period`] makes observable.

use std::fmt;

use crate::source::WordSource;

/// Seed used when none is given.
pub const DEFAULT_SEED: u32 = 1;

/// Multiplier and addend of an LCG `x' = a*x + c mod 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lcg32Config {
    pub name: &'static str,
    pub multiplier: u32,
    pub addend: u32,
}

impl Lcg32Config {
    /// Marsaglia's Super-Duper congruential component, `69069*x + 1`.
    pub const SUPER_DUPER: Self = Self::new("superduper", 69069, 1);
    /// glibc `rand`, `1103515245*x + 12345`.
    pub const GLIBC: Self = Self::new("glibc", 1_103_515_245, 12345);
    /// Borland C++ `rand`, `22695477*x + 1`.
    pub const BORLAND: Self = Self::new("borland", 22_695_477, 1);

    pub const BUILTIN: [Self; 3] = [Self::SUPER_DUPER, Self::GLIBC, Self::BORLAND];

    pub const fn new(name: &'static str, multiplier: u32, addend: u32) -> Self {
        Self {
            name,
            multiplier,
            addend,
        }
    }

    /// A user-supplied recurrence. The name is fixed to `custom`.
    pub const fn custom(multiplier: u32, addend: u32) -> Self {
        Self::new("custom", multiplier, addend)
    }

    /// Looks up a built-in generator by name (case-insensitive, a few aliases).
    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "superduper" | "super-duper" | "super_duper" | "sd" => Some(Self::SUPER_DUPER),
            "glibc" | "glibc-rand" => Some(Self::GLIBC),
            "borland" | "borland-rand" | "borlandc" => Some(Self::BORLAND),
            _ => None,
        }
    }

    /// Finds the built-in config with these constants, or a custom one.
    pub fn from_constants(multiplier: u32, addend: u32) -> Self {
        Self::BUILTIN
            .into_iter()
            .find(|c| c.multiplier == multiplier && c.addend == addend)
            .unwrap_or(Self::custom(multiplier, addend))
    }

    #[inline(always)]
    pub const fn apply(&self, x: u32) -> u32 {
        self.multiplier.wrapping_mul(x).wrapping_add(self.addend)
    }
}

impl fmt::Display for Lcg32Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

/// Current state `x_n` of an LCG.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lcg32State(pub u32);

impl Lcg32State {
    /// One application of the recurrence.
    #[inline(always)]
    pub const fn step(self, config: &Lcg32Config) -> Self {
        Self(config.apply(self.0))
    }

    /// Two steps, concatenating the high 16 bits of each new state.
    #[inline(always)]
    pub const fn next_u32(self, config: &Lcg32Config) -> (u32, Self) {
        let first = config.apply(self.0);
        let second = config.apply(first);
        ((first & 0xFFFF_0000) | (second >> 16), Self(second))
    }
}

/// Least `p <= max_steps` such that bit `bit_index` of the raw state sequence
/// starting at `seed` repeats with period `p`, or `None` if there is none.
///
/// The candidate period is checked over a window of `2 * max_steps` states.
pub fn bit_period(config: &Lcg32Config, seed: u32, bit_index: u32, max_steps: u64) -> Option<u64> {
    assert!(bit_index < 32, "bit index out of range: {bit_index}");
    assert!(max_steps >= 2, "max_steps must be at least 2");
    let window = 2 * max_steps as usize;
    let mut bits = Vec::with_capacity(window);
    let mut state = Lcg32State(seed);
    for _ in 0..window {
        bits.push((state.0 >> bit_index) & 1);
        state = state.step(config);
    }
    (1..=max_steps as usize)
        .find(|&p| bits.iter().zip(&bits[p..]).all(|(a, b)| a == b))
        .map(|p| p as u64)
}

/// An LCG emitting one concatenated word per two steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lcg32 {
    config: Lcg32Config,
    state: Lcg32State,
}

impl Lcg32 {
    pub fn new(config: Lcg32Config, seed: u32) -> Self {
        Self {
            config,
            state: Lcg32State(seed),
        }
    }

    pub fn config(&self) -> &Lcg32Config {
        &self.config
    }

    pub fn state(&self) -> Lcg32State {
        self.state
    }

    pub fn set_state(&mut self, state: Lcg32State) {
        self.state = state;
    }
}

impl WordSource for Lcg32 {
    #[inline(always)]
    fn next_u32(&mut self) -> u32 {
        let (word, state) = self.state.next_u32(&self.config);
        self.state = state;
        word
    }
}

/// An LCG emitting its raw states, without the high-bit concatenation.
///
/// Exists to expose the low-order-bit weakness the concatenation hides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawLcg32 {
    config: Lcg32Config,
    state: Lcg32State,
}

impl RawLcg32 {
    pub fn new(config: Lcg32Config, seed: u32) -> Self {
        Self {
            config,
            state: Lcg32State(seed),
        }
    }
}

impl WordSource for RawLcg32 {
    #[inline(always)]
    fn next_u32(&mut self) -> u32 {
        self.state = self.state.step(&self.config);
        self.state.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const IDENTITY: Lcg32Config = Lcg32Config::custom(1, 0);

    #[test]
    fn step_known_answers() {
        assert_eq!(Lcg32State(1).step(&Lcg32Config::SUPER_DUPER), Lcg32State(69070));
        assert_eq!(Lcg32State(1).step(&Lcg32Config::GLIBC), Lcg32State(1_103_527_590));
        assert_eq!(Lcg32State(0xDEAD_BEEF).step(&IDENTITY), Lcg32State(0xDEAD_BEEF));
    }

    #[test]
    fn concatenated_word_super_duper() {
        let (word, state) = Lcg32State(1).next_u32(&Lcg32Config::SUPER_DUPER);
        assert_eq!(state, Lcg32State(475_628_535));
        assert_eq!(state.0, 0x1C59_83F7);
        assert_eq!(word, 0x0001_1C59);
    }

    #[test]
    fn identity_fixed_point() {
        assert_eq!(Lcg32State(0).next_u32(&IDENTITY), (0, Lcg32State(0)));
    }

    #[test]
    fn glibc_golden_words() {
        // Recorded from an independent big-integer evaluation of the recurrence.
        let mut g = Lcg32::new(Lcg32Config::GLIBC, 12345);
        let words: Vec<u32> = (0..4).map(|_| g.next_u32()).collect();
        assert_eq!(words, [0xD3DC_A704, 0xD665_0DAA, 0xC21F_3EAD, 0xCD1D_AF5A]);
    }

    #[test]
    fn bit_period_examples() {
        assert_eq!(bit_period(&Lcg32Config::SUPER_DUPER, 1, 0, 16), Some(2));
        assert_eq!(bit_period(&Lcg32Config::GLIBC, 1, 1, 16), Some(4));
        assert_eq!(bit_period(&IDENTITY, 77, 0, 16), Some(1));
        // bit 5 has period 64, beyond the search limit
        assert_eq!(bit_period(&Lcg32Config::BORLAND, 1, 5, 16), None);
    }

    #[test]
    fn names_resolve() {
        assert_eq!(Lcg32Config::from_name("Super-Duper"), Some(Lcg32Config::SUPER_DUPER));
        assert_eq!(Lcg32Config::from_name("glibc"), Some(Lcg32Config::GLIBC));
        assert_eq!(Lcg32Config::from_name("borland"), Some(Lcg32Config::BORLAND));
        assert_eq!(Lcg32Config::from_name("randu"), None);
        assert_eq!(Lcg32Config::from_constants(22_695_477, 1), Lcg32Config::BORLAND);
        assert_eq!(Lcg32Config::from_constants(5, 3).name, "custom");
    }

    #[test]
    fn raw_lcg_emits_states() {
        let mut raw = RawLcg32::new(Lcg32Config::SUPER_DUPER, 1);
        assert_eq!(raw.next_u32(), 69070);
        assert_eq!(raw.next_u32(), 475_628_535);
    }

    proptest! {
        #[test]
        fn word_recombines_from_two_steps(seed: u32, idx in 0usize..3) {
            let config = Lcg32Config::BUILTIN[idx];
            let s1 = Lcg32State(seed).step(&config);
            let s2 = s1.step(&config);
            let (word, state) = Lcg32State(seed).next_u32(&config);
            prop_assert_eq!(state, s2);
            prop_assert_eq!(word, ((s1.0 >> 16) << 16) | (s2.0 >> 16));
        }

        #[test]
        fn step_matches_wide_arithmetic(seed: u32, a: u32, c: u32) {
            let config = Lcg32Config::custom(a, c);
            let wide = (u64::from(a) * u64::from(seed) + u64::from(c)) % (1u64 << 32);
            prop_assert_eq!(u64::from(Lcg32State(seed).step(&config).0), wide);
        }
    }
}

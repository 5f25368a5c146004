//! Packed bit-sequence views over word buffers.

/// Which bits of each word form the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BitLane {
    /// All 32 bits of every word, most significant first.
    All,
    /// Bit `b` (0 = least significant) of every word.
    Single(u8),
}

/// A bit sequence backed by a word slice.
#[derive(Clone, Copy, Debug)]
pub struct Bits<'a> {
    words: &'a [u32],
    lane: BitLane,
    len: usize,
}

impl<'a> Bits<'a> {
    pub fn all(words: &'a [u32]) -> Self {
        Self {
            words,
            lane: BitLane::All,
            len: words.len() * 32,
        }
    }

    pub fn lane(words: &'a [u32], lane: BitLane) -> Self {
        match lane {
            BitLane::All => Self::all(words),
            BitLane::Single(b) => {
                assert!(b < 32, "bit lane out of range: {b}");
                Self {
                    words,
                    lane,
                    len: words.len(),
                }
            }
        }
    }

    /// Keeps only the first `len` bits.
    pub fn truncated(mut self, len: usize) -> Self {
        self.len = self.len.min(len);
        self
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        match self.lane {
            BitLane::All => (self.words[i / 32] >> (31 - i % 32)) & 1 == 1,
            BitLane::Single(b) => (self.words[i] >> b) & 1 == 1,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> u64 {
        match self.lane {
            BitLane::All => {
                let full = self.len / 32;
                let mut ones: u64 = self.words[..full].iter().map(|w| u64::from(w.count_ones())).sum();
                let rem = self.len % 32;
                if rem > 0 {
                    ones += u64::from((self.words[full] >> (32 - rem)).count_ones());
                }
                ones
            }
            BitLane::Single(b) => self.words[..self.len].iter().map(|w| u64::from((w >> b) & 1)).sum(),
        }
    }

    /// Number of positions `i` with `bit[i] != bit[i + 1]`.
    pub fn transitions(&self) -> u64 {
        if self.len < 2 {
            return 0;
        }
        match self.lane {
            BitLane::All if self.len.is_multiple_of(32) => {
                let words = &self.words[..self.len / 32];
                let within: u64 = words
                    .iter()
                    .map(|&w| u64::from(((w ^ (w >> 1)) & 0x7FFF_FFFF).count_ones()))
                    .sum();
                let across: u64 = words.windows(2).map(|p| u64::from((p[0] & 1) ^ (p[1] >> 31))).sum();
                within + across
            }
            _ => {
                let mut prev = self.get(0);
                let mut count = 0;
                for i in 1..self.len {
                    let cur = self.get(i);
                    count += u64::from(cur != prev);
                    prev = cur;
                }
                count
            }
        }
    }
}

/// Packs booleans MSB-first into words; returns the words and the bit count.
pub fn pack_bits(bits: &[bool]) -> (Vec<u32>, usize) {
    let mut words = vec![0u32; bits.len().div_ceil(32)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            words[i / 32] |= 1 << (31 - i % 32);
        }
    }
    (words, bits.len())
}

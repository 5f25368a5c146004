//! SHA-256 in counter mode.
//!
//! Block `i` of stream `s` is `SHA-256(be64(s) || be64(i))` for
//! `i = 1, 2, 3, ...`, split into eight big-endian 32-bit words. Distinct
//! stream ids give disjoint message domains, which is how parallel streams
//! are derived.

use sha2::{Digest, Sha256};

use crate::source::WordSource;

pub const WORDS_PER_BLOCK: usize = 8;

/// FIPS 180-4 SHA-256 digest.
pub fn sha256(message: &[u8]) -> [u8; 32] {
    Sha256::digest(message).into()
}

/// The 16-byte hash input for `(stream_id, counter)`, both big-endian.
pub fn derive_message(stream_id: u64, counter: u64) -> [u8; 16] {
    let mut msg = [0u8; 16];
    msg[..8].copy_from_slice(&stream_id.to_be_bytes());
    msg[8..].copy_from_slice(&counter.to_be_bytes());
    msg
}

fn digest_words(digest: &[u8; 32]) -> [u32; WORDS_PER_BLOCK] {
    let mut words = [0u32; WORDS_PER_BLOCK];
    for (w, chunk) in words.iter_mut().zip(digest.chunks_exact(4)) {
        *w = u32::from_be_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]);
    }
    words
}

/// The eight words of block `counter` of stream `stream_id`.
pub fn block_words(stream_id: u64, counter: u64) -> [u32; WORDS_PER_BLOCK] {
    digest_words(&sha256(&derive_message(stream_id, counter)))
}

/// Word-at-a-time reader over the counter-mode block sequence of one stream.
///
/// `counter` is the next block number to hash (starts at 1) and `index` the
/// next unread word of the current block; `index == 8` means exhausted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterBlockSource {
    stream_id: u64,
    counter: u64,
    block: [u32; WORDS_PER_BLOCK],
    index: usize,
}

impl CounterBlockSource {
    pub fn new(stream_id: u64) -> Self {
        Self {
            stream_id,
            counter: 1,
            block: [0; WORDS_PER_BLOCK],
            index: WORDS_PER_BLOCK,
        }
    }

    /// Rebuilds a source at a saved position. The current block is recomputed
    /// from `counter - 1`. Returns `None` for an inconsistent position.
    pub fn resume(stream_id: u64, counter: u64, index: usize) -> Option<Self> {
        if counter == 0 || index > WORDS_PER_BLOCK || (counter == 1 && index != WORDS_PER_BLOCK) {
            return None;
        }
        let block = if counter > 1 {
            block_words(stream_id, counter - 1)
        } else {
            [0; WORDS_PER_BLOCK]
        };
        Some(Self {
            stream_id,
            counter,
            block,
            index,
        })
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Next block number to be hashed.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Number of SHA-256 evaluations performed so far.
    pub fn hash_invocations(&self) -> u64 {
        self.counter - 1
    }

    /// Number of words handed out so far.
    pub fn words_consumed(&self) -> u64 {
        match self.counter {
            1 => 0,
            c => (c - 2) * WORDS_PER_BLOCK as u64 + self.index as u64,
        }
    }

    /// Hashes the next counter value and makes it the current block.
    pub fn next_block(&mut self) -> [u32; WORDS_PER_BLOCK] {
        self.block = block_words(self.stream_id, self.counter);
        self.counter += 1;
        self.index = 0;
        self.block
    }

    #[inline]
    pub fn next_crypto_u32(&mut self) -> u32 {
        if self.index == WORDS_PER_BLOCK {
            self.next_block();
        }
        let w = self.block[self.index];
        self.index += 1;
        w
    }
}

impl WordSource for CounterBlockSource {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.next_crypto_u32()
    }

    fn fill(&mut self, dest: &mut [u32]) {
        let mut rest = dest;
        while !rest.is_empty() {
            if self.index == WORDS_PER_BLOCK {
                self.next_block();
            }
            let avail = &self.block[self.index..];
            let n = avail.len().min(rest.len());
            rest[..n].copy_from_slice(&avail[..n]);
            self.index += n;
            rest = &mut rest[n..];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hex(bytes: &[u8]) -> String {
        bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    // Golden blocks recorded with an independent SHA-256 (Python hashlib).
    pub(crate) const STREAM0_BLOCK1: [u32; 8] = [
        0x7c3ccd10, 0xbb7ec37b, 0x46d37926, 0xae627426, 0x7f007a34, 0xaeaf15c8, 0x82a715a7, 0xf3300529,
    ];
    const STREAM0_BLOCK2: [u32; 8] = [
        0x692865c9, 0xa376a1a8, 0x2d161b0f, 0x95785955, 0x54873797, 0xfa9ebbb0, 0x68b79782, 0x8122e61d,
    ];
    const STREAM1_BLOCK1: [u32; 8] = [
        0x532deabf, 0x88729cb4, 0x3995ab5a, 0x9cd49bf9, 0xb90a0799, 0x04dc0645, 0xecda9e47, 0xce7345a9,
    ];

    #[test]
    fn sha256_reference_vectors() {
        assert_eq!(
            hex(&sha256(b"")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_eq!(
            hex(&sha256(b"abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(
            hex(&sha256(b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")),
            "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1"
        );
        assert_eq!(sha256(b"repeat"), sha256(b"repeat"));
    }

    #[test]
    fn message_layout() {
        let mut expected = [0u8; 16];
        expected[15] = 1;
        assert_eq!(derive_message(0, 1), expected);

        let a = derive_message(0, 1);
        let b = derive_message(1, 1);
        let diff: Vec<usize> = (0..16).filter(|&i| a[i] != b[i]).collect();
        assert_eq!(diff, [7]);

        assert_eq!(
            derive_message(0x0102030405060708, 0x1122334455667788),
            [0x01, 0x02, 0x03, 0x04, 0x05, 0x06, 0x07, 0x08, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77, 0x88]
        );
    }

    #[test]
    fn golden_blocks() {
        let mut s = CounterBlockSource::new(0);
        assert_eq!(s.next_block(), STREAM0_BLOCK1);
        assert_eq!(s.next_block(), STREAM0_BLOCK2);
        assert_eq!(CounterBlockSource::new(1).next_block(), STREAM1_BLOCK1);
        assert_ne!(STREAM0_BLOCK1, STREAM1_BLOCK1);
    }

    #[test]
    fn word_reads_concatenate_blocks() {
        let mut s = CounterBlockSource::new(0);
        let words: Vec<u32> = (0..16).map(|_| s.next_crypto_u32()).collect();
        assert_eq!(&words[..8], &STREAM0_BLOCK1);
        assert_eq!(&words[8..], &STREAM0_BLOCK2);
        assert_eq!(s.hash_invocations(), 2);
        assert_eq!(s.words_consumed(), 16);
    }

    #[test]
    fn ninth_read_starts_block_two() {
        let mut s = CounterBlockSource::new(0);
        for _ in 0..8 {
            s.next_crypto_u32();
        }
        assert_eq!(s.hash_invocations(), 1);
        assert_eq!(s.next_crypto_u32(), STREAM0_BLOCK2[0]);
    }

    #[test]
    fn fill_matches_word_reads() {
        let mut a = CounterBlockSource::new(9);
        let mut b = CounterBlockSource::new(9);
        a.next_crypto_u32();
        b.next_crypto_u32();
        let mut buf = vec![0u32; 29];
        a.fill(&mut buf);
        let one_by_one: Vec<u32> = (0..29).map(|_| b.next_crypto_u32()).collect();
        assert_eq!(buf, one_by_one);
        assert_eq!(a, b);
    }

    #[test]
    fn hash_count_is_words_over_eight() {
        for k in [1u64, 7, 8, 9, 64, 100] {
            let mut s = CounterBlockSource::new(3);
            for _ in 0..8 * k {
                s.next_crypto_u32();
            }
            assert_eq!(s.hash_invocations(), k);
        }
    }

    #[test]
    fn resume_reproduces_position() {
        let mut s = CounterBlockSource::new(4);
        for _ in 0..11 {
            s.next_crypto_u32();
        }
        let mut r = CounterBlockSource::resume(4, s.counter(), s.index()).unwrap();
        assert_eq!(r, s);
        assert_eq!(r.next_crypto_u32(), s.next_crypto_u32());
        assert!(CounterBlockSource::resume(4, 0, 0).is_none());
        assert!(CounterBlockSource::resume(4, 1, 3).is_none());
        assert!(CounterBlockSource::resume(4, 2, 9).is_none());
    }
}

//! Tests over 32-bit words viewed as uniforms on [0, 1).

use super::{TestError, TestReport};
use crate::special::{chi_square_sf, normal_two_sided, poisson_sf_inclusive};

const TWO_POW_32: f64 = 4_294_967_296.0;

/// Minimum expected count per chi-square cell.
const MIN_EXPECTED: f64 = 5.0;

#[inline]
fn to_unit(w: u32) -> f64 {
    f64::from(w) / TWO_POW_32
}

fn invalid(test: &'static str, reason: impl Into<String>) -> TestError {
    TestError::InvalidParameter {
        test,
        reason: reason.into(),
    }
}

fn chi_square(observed: &[u64], expected: &[f64]) -> f64 {
    observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum()
}

/// Non-overlapping pairs `(w[2i], w[2i+1])`, each reduced to its top
/// `bits_per_cell` bits, counted over `2^(2*bits_per_cell)` cells and
/// compared with the uniform expectation by chi-square.
pub fn serial_pairs_chisq(words: &[u32], bits_per_cell: u32, alpha: f64) -> Result<TestReport, TestError> {
    const NAME: &str = "serial_pairs";
    if !(1..=16).contains(&bits_per_cell) {
        return Err(invalid(NAME, format!("bits_per_cell {bits_per_cell} not in 1..=16")));
    }
    let cells = 1usize << (2 * bits_per_cell);
    let pairs = words.len() / 2;
    let needed = (MIN_EXPECTED * cells as f64) as usize;
    if pairs < needed {
        return Err(TestError::TooFewSamples {
            test: NAME,
            needed: 2 * needed,
            got: words.len(),
        });
    }
    let shift = 32 - bits_per_cell;
    let mut counts = vec![0u64; cells];
    for pair in words.chunks_exact(2) {
        let cell = ((pair[0] >> shift) << bits_per_cell) | (pair[1] >> shift);
        counts[cell as usize] += 1;
    }
    let expected = pairs as f64 / cells as f64;
    let stat: f64 = counts
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum();
    let df = (cells - 1) as f64;
    Ok(TestReport::new(
        NAME,
        format!("bits_per_cell={bits_per_cell}"),
        stat,
        chi_square_sf(stat, df),
        words.len(),
        alpha,
    ))
}

/// Gap test on the interval `[lo, hi)`: lengths of runs of misses between
/// successive hits are binned into `0..t` and `>= t`, with the cut-off `t`
/// chosen from the sample size so every bin expects at least five gaps.
pub fn gap_test(words: &[u32], lo: f64, hi: f64, alpha: f64) -> Result<TestReport, TestError> {
    const NAME: &str = "gap";
    if !(0.0..1.0).contains(&lo) || !(lo < hi && hi <= 1.0) || hi - lo >= 1.0 {
        return Err(invalid(
            NAME,
            format!("interval [{lo}, {hi}) must be a proper subinterval of [0, 1)"),
        ));
    }
    let p = hi - lo;
    let expected_gaps = words.len() as f64 * p;
    // largest t whose smallest bin still expects MIN_EXPECTED gaps
    let mut t = 0usize;
    while t < 256 {
        let next = t + 1;
        let last_single = expected_gaps * p * (1.0 - p).powi(next as i32 - 1);
        let tail = expected_gaps * (1.0 - p).powi(next as i32);
        if last_single.min(tail) < MIN_EXPECTED {
            break;
        }
        t = next;
    }
    if t == 0 || expected_gaps < 100.0 {
        return Err(TestError::TooFewSamples {
            test: NAME,
            needed: (100.0 / p).ceil() as usize,
            got: words.len(),
        });
    }

    let mut counts = vec![0u64; t + 1];
    let mut current: Option<usize> = None;
    for &w in words {
        let u = to_unit(w);
        if u >= lo && u < hi {
            if let Some(len) = current {
                counts[len.min(t)] += 1;
            }
            current = Some(0);
        } else if let Some(len) = current.as_mut() {
            *len += 1;
        }
    }
    let gaps: u64 = counts.iter().sum();
    let params = format!("lo={lo};hi={hi};t={t}");
    if gaps == 0 {
        return Ok(TestReport::new(NAME, params, f64::INFINITY, 0.0, words.len(), alpha));
    }
    let g = gaps as f64;
    let mut expected: Vec<f64> = (0..t).map(|j| g * p * (1.0 - p).powi(j as i32)).collect();
    expected.push(g * (1.0 - p).powi(t as i32));
    let stat = chi_square(&counts, &expected);
    Ok(TestReport::new(
        NAME,
        params,
        stat,
        chi_square_sf(stat, t as f64),
        words.len(),
        alpha,
    ))
}

/// Birthday spacings: the sample is cut into `len / m` blocks of `m`
/// birthdays (the top `log2 d` bits of each word). Within a block the
/// birthdays are sorted, the `m` circular spacings formed, and the number of
/// repeated spacing values counted. The total over all blocks is compared
/// with Poisson(`blocks * m^3 / (4d)`), upper tail.
pub fn birthday_spacings(words: &[u32], m: usize, d: u64, alpha: f64) -> Result<TestReport, TestError> {
    const NAME: &str = "birthday_spacings";
    if !d.is_power_of_two() || !(2..=1u64 << 32).contains(&d) {
        return Err(invalid(NAME, format!("d = {d} must be a power of two in [2, 2^32]")));
    }
    if m < 2 {
        return Err(invalid(NAME, "m must be at least 2"));
    }
    let lambda = (m as f64).powi(3) / (4.0 * d as f64);
    if !(1.0..=16.0).contains(&lambda) {
        return Err(invalid(NAME, format!("lambda = m^3/(4d) = {lambda} not in [1, 16]")));
    }
    let blocks = words.len() / m;
    if blocks == 0 {
        return Err(TestError::TooFewSamples {
            test: NAME,
            needed: m,
            got: words.len(),
        });
    }
    let shift = 32 - d.trailing_zeros();
    let mut birthdays = vec![0u64; m];
    let mut spacings = vec![0u64; m];
    let mut collisions = 0u64;
    for block in words.chunks_exact(m) {
        for (b, &w) in birthdays.iter_mut().zip(block) {
            *b = u64::from(w >> shift);
        }
        birthdays.sort_unstable();
        spacings[0] = birthdays[0] + d - birthdays[m - 1];
        for i in 1..m {
            spacings[i] = birthdays[i] - birthdays[i - 1];
        }
        spacings.sort_unstable();
        collisions += spacings.windows(2).filter(|s| s[0] == s[1]).count() as u64;
    }
    let mean = blocks as f64 * lambda;
    Ok(TestReport::new(
        NAME,
        format!("m={m};d=2^{};blocks={blocks}", d.trailing_zeros()),
        collisions as f64,
        poisson_sf_inclusive(collisions, mean),
        words.len(),
        alpha,
    ))
}

/// Sample autocorrelation at `lag` of the words as uniforms, scored as
/// `z = r * N / sqrt(N - lag)`. A constant sample has correlation 1 and
/// `p = 0`.
pub fn lag_autocorrelation(words: &[u32], lag: usize, alpha: f64) -> Result<TestReport, TestError> {
    const NAME: &str = "lag_autocorrelation";
    const MIN_WORDS: usize = 10_000;
    if words.len() < MIN_WORDS {
        return Err(TestError::TooFewSamples {
            test: NAME,
            needed: MIN_WORDS,
            got: words.len(),
        });
    }
    if lag == 0 || lag > words.len() / 2 {
        return Err(invalid(NAME, format!("lag {lag} must be in 1..={}", words.len() / 2)));
    }
    let n = words.len() as f64;
    let mean = words.iter().map(|&w| to_unit(w)).sum::<f64>() / n;
    let centred: Vec<f64> = words.iter().map(|&w| to_unit(w) - mean).collect();
    let ss: f64 = centred.iter().map(|x| x * x).sum();
    let params = format!("lag={lag}");
    if ss == 0.0 {
        return Ok(TestReport::new(NAME, params, 1.0, 0.0, words.len(), alpha));
    }
    let cross: f64 = centred.iter().zip(&centred[lag..]).map(|(a, b)| a * b).sum();
    let r = cross / ss;
    let z = r * n / (n - lag as f64).sqrt();
    Ok(TestReport::new(
        NAME,
        params,
        r,
        normal_two_sided(z),
        words.len(),
        alpha,
    ))
}

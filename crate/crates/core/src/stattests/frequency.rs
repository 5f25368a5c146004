use super::bits::Bits;
use super::{TestError, TestReport};
use crate::special::normal_two_sided;

const MIN_BITS: usize = 100;

fn check_len(test: &'static str, bits: &Bits<'_>) -> Result<(), TestError> {
    if bits.len() < MIN_BITS {
        return Err(TestError::TooFewSamples {
            test,
            needed: MIN_BITS,
            got: bits.len(),
        });
    }
    Ok(())
}

/// Frequency test: `z = (2*ones - n) / sqrt(n)`, `p = erfc(|z| / sqrt 2)`.
pub fn monobit(bits: Bits<'_>, alpha: f64) -> Result<TestReport, TestError> {
    check_len("monobit", &bits)?;
    let n = bits.len() as f64;
    let ones = bits.count_ones() as f64;
    let z = (2.0 * ones - n) / n.sqrt();
    Ok(TestReport::new(
        "monobit",
        "",
        z,
        normal_two_sided(z),
        bits.len(),
        alpha,
    ))
}

/// Wald-Wolfowitz runs test conditioned on the observed counts of ones and
/// zeros. The statistic is the normal score of the number of runs. A sequence
/// made of a single symbol has no defined score and gets `p = 0`.
pub fn runs_test(bits: Bits<'_>, alpha: f64) -> Result<TestReport, TestError> {
    check_len("runs", &bits)?;
    let n = bits.len() as f64;
    let ones = bits.count_ones() as f64;
    let zeros = n - ones;
    let runs = bits.transitions() as f64 + 1.0;
    if ones == 0.0 || zeros == 0.0 {
        return Ok(TestReport::new("runs", "", f64::INFINITY, 0.0, bits.len(), alpha));
    }
    let product = 2.0 * ones * zeros;
    let mean = product / n + 1.0;
    let var = product * (product - n) / (n * n * (n - 1.0));
    let z = (runs - mean) / var.sqrt();
    Ok(TestReport::new("runs", "", z, normal_two_sided(z), bits.len(), alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hybrid::pure_sha_generator;
    use crate::source::WordSource;
    use crate::stattests::bits::{pack_bits, BitLane};
    use crate::stattests::Verdict;

    #[test]
    fn monobit_all_zero() {
        let (words, len) = pack_bits(&[false; 100]);
        let r = monobit(Bits::all(&words).truncated(len), 1e-3).unwrap();
        assert_eq!(r.statistic, -10.0);
        assert!(r.p_value < 1e-20);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn monobit_alternating_is_centred() {
        let bools: Vec<bool> = (0..1000).map(|i| i % 2 == 1).collect();
        let (words, len) = pack_bits(&bools);
        let r = monobit(Bits::all(&words).truncated(len), 1e-3).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn monobit_rejects_short_input() {
        let (words, len) = pack_bits(&[true; 99]);
        assert!(matches!(
            monobit(Bits::all(&words).truncated(len), 1e-3),
            Err(TestError::TooFewSamples {
                needed: 100,
                got: 99,
                ..
            })
        ));
    }

    #[test]
    fn monobit_sha_stream() {
        let words = pure_sha_generator(0).take_words(1 << 15);
        let r = monobit(Bits::all(&words), 1e-3).unwrap();
        assert_eq!(r.n_samples, 1 << 20);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn runs_known_value() {
        // 0011010111: n1 = 6, n0 = 4, R = 6
        let bools = [false, false, true, true, false, true, false, true, true, true];
        let bools: Vec<bool> = bools.iter().cycle().take(100).copied().collect();
        let (words, len) = pack_bits(&bools);
        let bits = Bits::all(&words).truncated(len);
        let r = runs_test(bits, 1e-3).unwrap();
        let (n, n1, n0) = (100.0f64, 60.0f64, 40.0f64);
        let runs = bools.windows(2).filter(|p| p[0] != p[1]).count() as f64 + 1.0;
        let mean = 2.0 * n1 * n0 / n + 1.0;
        let var = (mean - 1.0) * (mean - 2.0) / (n - 1.0);
        assert!((r.statistic - (runs - mean) / var.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn runs_detects_alternation_and_constant() {
        let words: Vec<u32> = (0..200u32).collect();
        let r = runs_test(Bits::lane(&words, BitLane::Single(0)), 1e-3).unwrap();
        assert!(r.statistic > 10.0 && !r.passed());
        let zeros = vec![0u32; 10];
        let r = runs_test(Bits::all(&zeros), 1e-3).unwrap();
        assert_eq!(r.p_value, 0.0);
    }

    #[test]
    fn runs_sha_stream() {
        let words = pure_sha_generator(0).take_words(1 << 15);
        assert!(runs_test(Bits::all(&words), 1e-3).unwrap().passed());
    }
}

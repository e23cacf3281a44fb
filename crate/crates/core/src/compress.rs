//! Code-word length functions used as the compressor behind NCD.
//!
//! The default coder is an incremental dictionary parser in the LZW family.
//! Only the total code length is computed; no encoded output is produced.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alphabet::Symbol;

/// Length in bits of an encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CodeLength(pub u64);

impl CodeLength {
    pub fn bits(self) -> u64 {
        self.0
    }
}

/// A code-word length function `C`. Implementations must return 0 for the
/// empty string and be deterministic.
pub trait Compressor: Sync {
    fn code_len(&self, x: &[Symbol]) -> CodeLength;
}

impl<F> Compressor for F
where
    F: Fn(&[Symbol]) -> CodeLength + Sync,
{
    fn code_len(&self, x: &[Symbol]) -> CodeLength {
        self(x)
    }
}

/// Dictionary coder.
///
/// The dictionary starts with every single symbol. The input is split
/// greedily into the longest dictionary phrase at each position; after each
/// phrase that is followed by more input, the phrase extended by the next
/// symbol is added. A phrase costs `max(1, floor(log2 d))` bits where `d` is
/// the dictionary size when the phrase is emitted, before the insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DictCoder {
    alphabet_size: usize,
}

impl DictCoder {
    pub fn new(alphabet_size: usize) -> Self {
        assert!(alphabet_size > 0, "alphabet must be non-empty");
        DictCoder { alphabet_size }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Widths of the emitted phrases, in order.
    pub fn phrase_widths(&self, x: &[Symbol]) -> Vec<u32> {
        let mut widths = Vec::new();
        self.parse(x, |w| widths.push(w));
        widths
    }

    fn parse(&self, x: &[Symbol], mut emit: impl FnMut(u32)) {
        let k = self.alphabet_size;
        // Trie over dictionary phrases. Node 0 is the empty phrase; nodes
        // 1..=k are the single symbols. `children[node * k + a]` is 0 when
        // absent.
        let mut children: Vec<u32> = vec![0; (k + 1) * k];
        for (a, c) in children.iter_mut().take(k).enumerate() {
            *c = (a + 1) as u32;
        }
        let mut dict_size = k as u64;
        let mut pos = 0;
        while pos < x.len() {
            let mut node = 0usize;
            while pos < x.len() {
                let a = x[pos] as usize;
                assert!(a < k, "symbol {a} outside an alphabet of {k}");
                let child = children[node * k + a];
                if child == 0 {
                    break;
                }
                node = child as usize;
                pos += 1;
            }
            emit(dict_size.ilog2().max(1));
            if pos < x.len() {
                let a = x[pos] as usize;
                let fresh = children.len() / k;
                children[node * k + a] = fresh as u32;
                children.resize(children.len() + k, 0);
                dict_size += 1;
            }
        }
    }
}

impl Compressor for DictCoder {
    fn code_len(&self, x: &[Symbol]) -> CodeLength {
        let mut bits = 0u64;
        self.parse(x, |w| bits += u64::from(w));
        CodeLength(bits)
    }
}

/// Largest observed departure from the normal-compressor axioms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Deviation {
    /// Maximum raw deviation in bits.
    pub bits: u64,
    /// Maximum of the deviation divided by `log2 n`, `n` being the longest
    /// operand length (taken as at least 2).
    pub per_log_n: f64,
}

impl Deviation {
    fn record(&mut self, bits: u64, n: usize) {
        self.bits = self.bits.max(bits);
        let norm = bits as f64 / (n.max(2) as f64).log2();
        if norm > self.per_log_n {
            self.per_log_n = norm;
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    /// `|C(xx) - C(x)|`
    pub idempotency: Deviation,
    /// `|C(xy) - C(yx)|`
    pub symmetry: Deviation,
    /// `max(0, C(xy) - C(x) - C(y))`
    pub subadditivity: Deviation,
    pub pairs_checked: usize,
}

pub const MAX_NORMALITY_PAIRS: usize = 10_000;

/// Measures how far `c` is from a normal compressor on `corpus`.
///
/// Every string is checked for idempotency. Symmetry and subadditivity are
/// checked over all ordered pairs (including `(x, x)`), or over
/// [`MAX_NORMALITY_PAIRS`] pairs sampled with `seed` when there are more.
pub fn normality_report<C: Compressor + ?Sized>(c: &C, corpus: &[Vec<Symbol>], seed: u64) -> NormalityReport {
    let mut report = NormalityReport::default();
    if corpus.is_empty() {
        return report;
    }
    let lens: Vec<u64> = corpus.iter().map(|x| c.code_len(x).0).collect();
    for (x, &cx) in corpus.iter().zip(&lens) {
        let xx = [x.as_slice(), x.as_slice()].concat();
        report.idempotency.record(c.code_len(&xx).0.abs_diff(cx), xx.len());
    }

    let n = corpus.len();
    let total = n * n;
    let pairs: Vec<usize> = if total <= MAX_NORMALITY_PAIRS {
        (0..total).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = index::sample(&mut rng, total, MAX_NORMALITY_PAIRS).into_vec();
        v.sort_unstable();
        v
    };
    for &p in &pairs {
        let (i, j) = (p / n, p % n);
        let (x, y) = (&corpus[i], &corpus[j]);
        let xy = [x.as_slice(), y.as_slice()].concat();
        let yx = [y.as_slice(), x.as_slice()].concat();
        let cxy = c.code_len(&xy).0;
        let cyx = c.code_len(&yx).0;
        let longest = xy.len();
        report.symmetry.record(cxy.abs_diff(cyx), longest);
        report
            .subadditivity
            .record(cxy.saturating_sub(lens[i] + lens[j]), longest);
    }
    report.pairs_checked = pairs.len();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_zero() {
        for k in [1, 2, 26] {
            assert_eq!(DictCoder::new(k).code_len(&[]), CodeLength(0));
        }
    }

    #[test]
    fn hand_simulated_parses() {
        // {a}: "a" -> one phrase at dictionary size 1.
        assert_eq!(DictCoder::new(1).phrase_widths(&[0]), vec![1]);
        // {a}: "aa" -> a | a, sizes 1, 2.
        assert_eq!(DictCoder::new(1).phrase_widths(&[0, 0]), vec![1, 1]);
        // {a,b}: "abab" -> a | b | ab at sizes 2, 3, 4.
        assert_eq!(DictCoder::new(2).phrase_widths(&[0, 1, 0, 1]), vec![1, 1, 2]);
        assert_eq!(DictCoder::new(2).code_len(&[0, 1, 0, 1]), CodeLength(4));
        // {a}: "aaaaaa" -> a | aa | aaa at sizes 1, 2, 3.
        assert_eq!(DictCoder::new(1).phrase_widths(&[0; 6]), vec![1, 1, 1]);
    }

    #[test]
    fn positive_on_nonempty() {
        let c = DictCoder::new(3);
        for x in [vec![0], vec![2, 2], vec![0, 1, 2, 0, 1, 2]] {
            assert!(c.code_len(&x).0 >= 1);
        }
    }

    #[test]
    fn unary_growth_bound() {
        let c = DictCoder::new(1);
        for n in [16usize, 64, 256] {
            let one = c.code_len(&vec![0; n]).0;
            let two = c.code_len(&vec![0; 2 * n]).0;
            assert!(one <= two && two <= 2 * one, "n={n}: {one} {two}");
        }
    }

    #[test]
    fn unary_phrase_count_grows_like_sqrt() {
        let c = DictCoder::new(1);
        for n in [100usize, 1_000, 10_000] {
            let phrases = c.phrase_widths(&vec![0; n]).len() as f64;
            let root = (n as f64).sqrt();
            assert!(phrases >= root && phrases <= 2.0 * root, "n={n}: {phrases}");
        }
    }

    #[test]
    fn closures_are_compressors() {
        let len = |x: &[Symbol]| CodeLength(x.len() as u64);
        assert_eq!(len.code_len(&[1, 2]), CodeLength(2));
    }

    #[test]
    fn normality_small_corpora() {
        let c = DictCoder::new(1);
        let r = normality_report(&c, &[vec![]], 0);
        assert_eq!(r.idempotency.bits, 0);
        assert_eq!(r.symmetry.bits, 0);
        assert_eq!(r.subadditivity.bits, 0);

        let r = normality_report(&c, &[vec![0]], 0);
        assert_eq!(r.subadditivity.bits, 0);
        assert_eq!(r.pairs_checked, 1);
    }

    #[test]
    fn normality_samples_large_corpora() {
        let corpus: Vec<Vec<Symbol>> = (0..150).map(|i| vec![(i % 2) as Symbol; 1 + i % 7]).collect();
        let c = DictCoder::new(2);
        let a = normality_report(&c, &corpus, 3);
        assert_eq!(a.pairs_checked, MAX_NORMALITY_PAIRS);
        assert_eq!(a, normality_report(&c, &corpus, 3));
    }
}

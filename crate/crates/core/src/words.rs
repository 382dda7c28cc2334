//! Bit-packed binary words, Hamming metrics and enumeration of admissible word sets.
//!
//! A word of length `n` is packed into `ceil(n / 64)` machine words. Bit `i` of
//! the packed form holds the `i`-th character of the textual form, counting from
//! the left. Bits at positions `>= n` are always zero.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default upper bound on the number of words an enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

const LIMB_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    len: usize,
    limbs: Box<[u64]>,
}

impl Word {
    /// The all-zeros word of length `len`.
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "word length must be positive");
        Word {
            len,
            limbs: vec![0; len.div_ceil(LIMB_BITS)].into_boxed_slice(),
        }
    }

    /// The all-ones word of length `len`.
    pub fn ones(len: usize) -> Self {
        let mut w = Word::zeros(len);
        for i in 0..len {
            w.set(i, true);
        }
        w
    }

    /// Builds a word from the positions (0 = leftmost) that hold a one.
    pub fn from_ones(len: usize, ones: &[usize]) -> Self {
        let mut w = Word::zeros(len);
        for &i in ones {
            w.set(i, true);
        }
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.limbs[i / LIMB_BITS] >> (i % LIMB_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % LIMB_BITS);
        if value {
            self.limbs[i / LIMB_BITS] |= mask;
        } else {
            self.limbs[i / LIMB_BITS] &= !mask;
        }
    }

    /// Packed representation, least significant limb first.
    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// Number of ones.
    pub fn weight(&self) -> u32 {
        self.limbs.iter().map(|l| l.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Hamming distance to a word of the same length.
    ///
    /// Lengths are only checked in debug builds; use [`hamming_distance`] for a
    /// checked variant.
    #[inline]
    pub fn distance(&self, other: &Word) -> u32 {
        debug_assert_eq!(self.len, other.len);
        self.limbs
            .iter()
            .zip(other.limbs.iter())
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }

    /// Bitwise complement within the word length.
    pub fn complement(&self) -> Word {
        let mut out = self.clone();
        for (i, limb) in out.limbs.iter_mut().enumerate() {
            let used = (self.len - i * LIMB_BITS).min(LIMB_BITS);
            let mask = if used == LIMB_BITS {
                u64::MAX
            } else {
                (1u64 << used) - 1
            };
            *limb = !*limb & mask;
        }
        out
    }
}

/// Words order by length, then as binary numbers read left to right, which is
/// the lexicographic order of their textual forms.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.limbs.iter().zip(other.limbs.iter()) {
                match a.reverse_bits().cmp(&b.reverse_bits()) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::usage("empty word"));
        }
        let mut w = Word::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => w.set(i, true),
                other => {
                    return Err(Error::usage(format!(
                        "illegal character {other:?} at position {}",
                        i + 1
                    )))
                }
            }
        }
        Ok(w)
    }
}

/// Hamming distance, rejecting words of different lengths.
pub fn hamming_distance(x: &Word, y: &Word) -> Result<u32> {
    if x.len() != y.len() {
        return Err(Error::usage(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.distance(y))
}

pub fn weight(x: &Word) -> u32 {
    x.weight()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// Every word has weight exactly `w`.
    Constant,
    /// Every word has weight at most `w`.
    Bounded,
}

impl WeightMode {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightMode::Constant => "constant",
            WeightMode::Bounded => "bounded",
        }
    }

    pub fn admits(self, weight: u32, w: usize) -> bool {
        match self {
            WeightMode::Constant => weight as usize == w,
            WeightMode::Bounded => weight as usize <= w,
        }
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(WeightMode::Constant),
            "bounded" => Ok(WeightMode::Bounded),
            other => Err(Error::usage(format!("unknown weight mode {other:?}"))),
        }
    }
}

/// Parameters of a code search instance: length `n`, minimum distance `d`,
/// weight parameter `w` and how `w` constrains the words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub d: usize,
    pub w: usize,
    pub mode: WeightMode,
}

impl CodeParams {
    /// Validates `n >= 1`, `1 <= w <= n` and `d >= 1`.
    ///
    /// `d > n` is accepted: the resulting graph is edgeless.
    pub fn new(n: usize, d: usize, w: usize, mode: WeightMode) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("length n must be at least 1"));
        }
        if d == 0 {
            return Err(Error::usage("distance d must be at least 1"));
        }
        if w == 0 || w > n {
            return Err(Error::usage(format!(
                "weight w must lie in 1..={n}, got {w}"
            )));
        }
        Ok(CodeParams { n, d, w, mode })
    }

    pub fn bounded(n: usize, d: usize, w: usize) -> Result<Self> {
        Self::new(n, d, w, WeightMode::Bounded)
    }

    pub fn constant(n: usize, d: usize, w: usize) -> Result<Self> {
        Self::new(n, d, w, WeightMode::Constant)
    }

    pub fn with_mode(self, mode: WeightMode) -> Self {
        CodeParams { mode, ..self }
    }

    /// Number of admissible words, saturating at `u128::MAX`.
    pub fn word_count(&self) -> u128 {
        match self.mode {
            WeightMode::Constant => binomial(self.n, self.w),
            WeightMode::Bounded => {
                (0..=self.w).fold(0u128, |acc, j| acc.saturating_add(binomial(self.n, j)))
            }
        }
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} d={} w={} mode={}",
            self.n, self.d, self.w, self.mode
        )
    }
}

/// `C(n, k)`, saturating on overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Every admissible word for `params`, in ascending [`Word`] order.
pub fn enumerate_words(params: &CodeParams) -> Result<Vec<Word>> {
    enumerate_words_capped(params, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_words_capped(params: &CodeParams, cap: u64) -> Result<Vec<Word>> {
    let count = params.word_count();
    if count > cap as u128 {
        return Err(Error::capacity(format!(
            "{params} admits {count} words, above the enumeration cap of {cap}"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut current = Word::zeros(params.n);
    let min_weight = match params.mode {
        WeightMode::Constant => params.w,
        WeightMode::Bounded => 0,
    };
    fill(&mut out, &mut current, 0, 0, min_weight, params.w);
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

// Depth-first over positions, '0' before '1', which yields ascending order.
fn fill(
    out: &mut Vec<Word>,
    current: &mut Word,
    pos: usize,
    ones: usize,
    min_weight: usize,
    max_weight: usize,
) {
    let n = current.len();
    if pos == n {
        out.push(current.clone());
        return;
    }
    let remaining = n - pos - 1;
    if ones + remaining >= min_weight {
        fill(out, current, pos + 1, ones, min_weight, max_weight);
    }
    if ones < max_weight {
        current.set(pos, true);
        fill(out, current, pos + 1, ones + 1, min_weight, max_weight);
        current.set(pos, false);
    }
}

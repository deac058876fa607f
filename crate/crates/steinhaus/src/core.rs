//! Binary sequences, the XOR derivative, triangle construction and weights.
//!
//! Sequences are stored as packed 64-bit words (bit `i` of the packing is
//! entry `x_i`), so the derivative is a shift-and-XOR. The exhaustive search
//! paths in [`crate::extremes`] additionally use a bare `u64` kernel for
//! seeds of length at most 63.

use std::fmt;

use crate::{Error, Result};

/// A finite 0/1 sequence, packed least-significant-bit first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    words: Vec<u64>,
    len: usize,
}

impl BinarySequence {
    /// All-zero sequence of the given length. The empty sequence is valid.
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Canonical basis vector `e_k` of length `n`: a single 1 at index `k`.
    pub fn basis(k: usize, n: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::InvalidInput(format!(
                "basis index {k} out of range for length {n}"
            )));
        }
        let mut s = Self::zeros(n);
        s.set(k, true);
        Ok(s)
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (len % 64);
            }
            len += 1;
        }
        Self { words, len }
    }

    /// Low `len` bits of `bits`, index 0 at the least significant bit.
    pub fn from_word(bits: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut s = Self::zeros(len);
        if len > 0 {
            let mask = if len == 64 { u64::MAX } else { (1 << len) - 1 };
            s.words[0] = bits & mask;
        }
        s
    }

    /// Parse a 0/1 string, index 0 leftmost.
    pub fn parse_01(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "seed must consist of '0' and '1' characters, found {ch:?}"
                    )))
                }
            }
        }
        Ok(Self::from_bits(bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len);
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    /// Number of ones.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Pairwise XOR of adjacent entries; length shrinks by one.
    /// The empty sequence and length-1 sequences map to the empty sequence.
    pub fn derivative(&self) -> Self {
        let mut d = self.clone();
        d.derivative_in_place();
        d
    }

    pub(crate) fn derivative_in_place(&mut self) {
        if self.len <= 1 {
            self.len = 0;
            self.words.clear();
            return;
        }
        let new_len = self.len - 1;
        let new_words = new_len.div_ceil(64);
        for i in 0..new_words {
            let next = self.words.get(i + 1).copied().unwrap_or(0);
            self.words[i] = self.words[i] ^ (self.words[i] >> 1) ^ (next << 63);
        }
        self.words.truncate(new_words);
        self.len = new_len;
        self.mask_tail();
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1 << rem) - 1;
            }
        }
    }

    /// Entrywise XOR of two sequences of equal length.
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "xor requires equal lengths");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Self {
            words,
            len: self.len,
        }
    }

    pub fn reversed(&self) -> Self {
        Self::from_bits((0..self.len).rev().map(|i| self.get(i)))
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Packing of a sequence of length at most 64 into a word, bit `i` = `x_i`.
    pub fn to_word(&self) -> u64 {
        assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter_bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence({self})")
    }
}

/// The rows `(x, ∂x, ∂²x, …)` of the triangle generated by a seed of
/// length `n`; row `r` has length `n − r`.
#[derive(Clone, PartialEq, Eq)]
pub struct SteinhausTriangle {
    rows: Vec<BinarySequence>,
}

impl SteinhausTriangle {
    /// Materialize all rows. The empty seed is rejected.
    pub fn new(seed: &BinarySequence) -> Result<Self> {
        if seed.is_empty() {
            return Err(Error::InvalidInput("triangle seed must be nonempty".into()));
        }
        let mut rows = Vec::with_capacity(seed.len());
        rows.push(seed.clone());
        while rows.last().unwrap().len() > 1 {
            rows.push(rows.last().unwrap().derivative());
        }
        Ok(Self { rows })
    }

    /// Size `n`: the seed length, which is also the number of rows.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BinarySequence] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &BinarySequence {
        &self.rows[r]
    }

    pub fn entry(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// Sum of the row weights.
    pub fn weight(&self) -> u64 {
        self.rows.iter().map(BinarySequence::weight).sum()
    }
}

/// Triangle weight without materializing rows; memory stays O(n) bits.
pub fn triangle_weight(seed: &BinarySequence) -> u64 {
    let mut row = seed.clone();
    let mut w = 0;
    while !row.is_empty() {
        w += row.weight();
        row.derivative_in_place();
    }
    w
}

/// Sum of the weights of rows `0..m` of the triangle generated by `seed`.
pub fn partial_weight(seed: &BinarySequence, m: usize) -> Result<u64> {
    if m < 1 || m > seed.len() {
        return Err(Error::InvalidInput(format!(
            "row count {m} out of range 1..={}",
            seed.len()
        )));
    }
    let mut row = seed.clone();
    let mut w = 0;
    for _ in 0..m {
        w += row.weight();
        row.derivative_in_place();
    }
    Ok(w)
}

/// Triangle weight of a word-packed seed of length `n ≤ 63`.
///
/// This is the hot kernel for exhaustive enumeration: one XOR, one shift and
/// one popcount per row.
#[inline]
pub fn triangle_weight_word(seed: u64, n: u32) -> u64 {
    debug_assert!(n <= 63);
    let mut row = seed;
    let mut w = 0u64;
    let mut len = n;
    while len > 0 {
        row &= (1 << len) - 1;
        w += u64::from(row.count_ones());
        row ^= row >> 1;
        len -= 1;
    }
    w
}

/// Rendering style for [`render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderStyle {
    /// Entries printed as '0'/'1'.
    Digits,
    /// Entries printed as sign characters, 1 first.
    Signs { one: char, zero: char },
}

impl RenderStyle {
    pub fn signs() -> Self {
        RenderStyle::Signs {
            one: '+',
            zero: '-',
        }
    }

    fn chars(self) -> (char, char) {
        match self {
            RenderStyle::Digits => ('1', '0'),
            RenderStyle::Signs { one, zero } => (one, zero),
        }
    }
}

/// One line per row, row `r` indented `r` half-steps, entries separated by
/// single spaces.
pub fn render(triangle: &SteinhausTriangle, style: RenderStyle) -> String {
    let (one, zero) = style.chars();
    let mut out = String::new();
    for (r, row) in triangle.rows().iter().enumerate() {
        for _ in 0..r {
            out.push(' ');
        }
        for (c, b) in row.iter_bits().enumerate() {
            if c > 0 {
                out.push(' ');
            }
            out.push(if b { one } else { zero });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(bits: &[u8]) -> BinarySequence {
        BinarySequence::from_bits(bits.iter().map(|&b| b == 1))
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            seq(&[1, 1, 0, 1, 1, 0, 1]).derivative(),
            seq(&[0, 1, 1, 0, 1, 1])
        );
        assert_eq!(seq(&[0, 0, 0, 0]).derivative(), seq(&[0, 0, 0]));
        assert_eq!(seq(&[0, 1, 0]).derivative(), seq(&[1, 1]));
        assert_eq!(seq(&[1]).derivative(), seq(&[]));
        assert_eq!(seq(&[]).derivative(), seq(&[]));
    }

    #[test]
    fn triangle_rows() {
        let t = SteinhausTriangle::new(&seq(&[0, 1, 0])).unwrap();
        assert_eq!(t.rows(), &[seq(&[0, 1, 0]), seq(&[1, 1]), seq(&[0])]);
        assert_eq!(t.weight(), 3);
    }

    #[test]
    fn triangle_rejects_empty_seed() {
        assert!(SteinhausTriangle::new(&seq(&[])).is_err());
    }

    #[test]
    fn triangle_of_zero_seed_is_zero() {
        for n in 1..20 {
            assert_eq!(triangle_weight(&BinarySequence::zeros(n)), 0);
        }
    }

    #[test]
    fn paper_seven_sign_figure_second_row() {
        // + + - + - + + with + ↦ 1 and the XOR rule.
        let t = SteinhausTriangle::new(&seq(&[1, 0, 0, 1, 0, 1, 1])).unwrap();
        assert_eq!(t.row(1), &seq(&[1, 0, 1, 1, 1, 0]));
    }

    #[test]
    fn sequence_weights() {
        assert_eq!(seq(&[1, 1, 0, 1, 1, 0]).weight(), 4);
        assert_eq!(BinarySequence::zeros(9).weight(), 0);
        assert_eq!(seq(&[1]).weight(), 1);
    }

    #[test]
    fn partial_weight_examples() {
        let e6 = BinarySequence::basis(6, 15).unwrap();
        assert_eq!(partial_weight(&e6, 8).unwrap(), 26);
        let e2 = BinarySequence::basis(2, 7).unwrap();
        assert_eq!(partial_weight(&e2, 7).unwrap(), 11);
        assert_eq!(partial_weight(&e2, 1).unwrap(), e2.weight());
        assert!(partial_weight(&e2, 0).is_err());
        assert!(partial_weight(&e2, 8).is_err());
    }

    #[test]
    fn partial_weight_full_equals_triangle_weight() {
        let e6 = BinarySequence::basis(6, 11).unwrap();
        assert_eq!(partial_weight(&e6, 11).unwrap(), 21);
        assert_eq!(triangle_weight(&e6), 21);
    }

    #[test]
    fn render_digits() {
        let t = SteinhausTriangle::new(&seq(&[0, 1, 0])).unwrap();
        assert_eq!(render(&t, RenderStyle::Digits), "0 1 0\n 1 1\n  0\n");
        let z = SteinhausTriangle::new(&BinarySequence::zeros(2)).unwrap();
        assert_eq!(render(&z, RenderStyle::Digits), "0 0\n 0\n");
    }

    #[test]
    fn render_signs() {
        let t = SteinhausTriangle::new(&seq(&[1, 0])).unwrap();
        assert_eq!(render(&t, RenderStyle::signs()), "+ -\n +\n");
    }

    #[test]
    fn parse_01_roundtrip_and_errors() {
        let s = BinarySequence::parse_01("0110001").unwrap();
        assert_eq!(s.to_string(), "0110001");
        assert!(BinarySequence::parse_01("01x").is_err());
        assert!(BinarySequence::parse_01("").unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn derivative_shortens_by_one(bits in proptest::collection::vec(any::<bool>(), 1..300)) {
            let x = BinarySequence::from_bits(bits);
            prop_assert_eq!(x.derivative().len(), x.len() - 1);
        }

        #[test]
        fn local_rule_holds(bits in proptest::collection::vec(any::<bool>(), 1..80)) {
            let t = SteinhausTriangle::new(&BinarySequence::from_bits(bits)).unwrap();
            for r in 1..t.size() {
                for c in 0..t.row(r).len() {
                    prop_assert_eq!(t.entry(r, c), t.entry(r - 1, c) ^ t.entry(r - 1, c + 1));
                }
            }
        }

        #[test]
        fn triangle_is_linear_in_the_seed(
            a in proptest::collection::vec(any::<bool>(), 1..60),
            b in proptest::collection::vec(any::<bool>(), 1..60),
        ) {
            let n = a.len().min(b.len());
            let x = BinarySequence::from_bits(a.into_iter().take(n));
            let y = BinarySequence::from_bits(b.into_iter().take(n));
            let tx = SteinhausTriangle::new(&x).unwrap();
            let ty = SteinhausTriangle::new(&y).unwrap();
            let txy = SteinhausTriangle::new(&x.xor(&y)).unwrap();
            for r in 0..n {
                prop_assert_eq!(txy.row(r), &tx.row(r).xor(ty.row(r)));
            }
        }

        #[test]
        fn word_kernel_agrees_with_packed_path(seed in any::<u64>(), n in 1u32..=63) {
            let masked = seed & ((1 << n) - 1);
            let s = BinarySequence::from_word(masked, n as usize);
            prop_assert_eq!(triangle_weight_word(masked, n), triangle_weight(&s));
        }

        #[test]
        fn reversal_preserves_triangle_weight(bits in proptest::collection::vec(any::<bool>(), 1..120)) {
            let x = BinarySequence::from_bits(bits);
            prop_assert_eq!(triangle_weight(&x), triangle_weight(&x.reversed()));
        }
    }
}

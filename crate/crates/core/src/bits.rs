//! Compact integer and bit containers: byte-packed and bit-packed integer
//! vectors, a rank/select bitvector and an Elias-Fano sequence.
//!
//! Every container writes itself as little-endian words. Rank and select
//! directories are not written; they are rebuilt on load.

use crate::codec::{ByteReader, ByteWriter};
use crate::error::{Error, Result};

/// Number of whole bytes needed to hold `max`.
pub fn byte_width(max: u64) -> u8 {
    let bits = 64 - max.leading_zeros();
    bits.div_ceil(8).max(1) as u8
}

/// Number of bits needed to hold `max`.
pub fn bit_width(max: u64) -> u8 {
    (64 - max.leading_zeros()) as u8
}

/// Unsigned integers stored at a fixed whole-byte width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedInts {
    width: u8,
    len: usize,
    data: Vec<u8>,
}

impl PackedInts {
    /// Packs `values` at the smallest width that holds both `at_least` and
    /// every value.
    pub fn new(values: &[usize], at_least: usize) -> Self {
        let max = values.iter().copied().max().unwrap_or(0).max(at_least);
        Self::with_width(values, byte_width(max as u64))
    }

    pub fn with_width(values: &[usize], width: u8) -> Self {
        assert!((1..=8).contains(&width));
        let w = width as usize;
        let mut data = Vec::with_capacity(values.len() * w);
        for &v in values {
            debug_assert!(w == 8 || (v as u64) >> (8 * w) == 0);
            data.extend_from_slice(&(v as u64).to_le_bytes()[..w]);
        }
        PackedInts {
            width,
            len: values.len(),
            data,
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> usize {
        let w = self.width as usize;
        let mut buf = [0u8; 8];
        buf[..w].copy_from_slice(&self.data[i * w..i * w + w]);
        u64::from_le_bytes(buf) as usize
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u8 {
        self.width
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Binary search over a non-decreasing vector: the number of leading
    /// entries for which `pred` holds.
    pub fn partition_point(&self, mut pred: impl FnMut(usize) -> bool) -> usize {
        let (mut lo, mut hi) = (0, self.len);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if pred(self.get(mid)) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    pub(crate) fn write(&self, out: &mut ByteWriter) {
        out.u8(self.width);
        out.u64(self.len as u64);
        out.bytes(&self.data);
    }

    pub(crate) fn read(r: &mut ByteReader) -> Result<Self> {
        let width = r.u8()?;
        if !(1..=8).contains(&width) {
            return Err(Error::Malformed(format!("packed width {width}")));
        }
        let len = r.len()?;
        let bytes = len
            .checked_mul(width as usize)
            .ok_or_else(|| Error::Malformed("packed length overflow".into()))?;
        let data = r.bytes(bytes)?.to_vec();
        Ok(PackedInts { width, len, data })
    }
}

/// Unsigned integers stored at a fixed bit width (0..=64).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitPackedInts {
    bits: u8,
    len: usize,
    words: Vec<u64>,
}

impl BitPackedInts {
    pub fn new(values: impl IntoIterator<Item = u64>, bits: u8) -> Self {
        assert!(bits <= 64);
        let mut words = Vec::new();
        let mut len = 0;
        let b = bits as usize;
        for v in values {
            debug_assert!(b == 64 || v >> b == 0);
            if b > 0 {
                let at = len * b;
                let (w, off) = (at / 64, at % 64);
                if words.len() < (at + b).div_ceil(64) {
                    words.resize((at + b).div_ceil(64), 0);
                }
                words[w] |= v << off;
                if off + b > 64 {
                    words[w + 1] |= v >> (64 - off);
                }
            }
            len += 1;
        }
        BitPackedInts { bits, len, words }
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        let b = self.bits as usize;
        if b == 0 {
            return 0;
        }
        let at = i * b;
        let (w, off) = (at / 64, at % 64);
        let mask = if b == 64 { u64::MAX } else { (1u64 << b) - 1 };
        let mut v = self.words[w] >> off;
        if off + b > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        v & mask
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub(crate) fn write(&self, out: &mut ByteWriter) {
        out.u8(self.bits);
        out.u64(self.len as u64);
        out.words(&self.words);
    }

    pub(crate) fn read(r: &mut ByteReader) -> Result<Self> {
        let bits = r.u8()?;
        if bits > 64 {
            return Err(Error::Malformed(format!("bit width {bits}")));
        }
        let len = r.len()?;
        let words = r.words()?;
        if words.len() != (len * bits as usize).div_ceil(64) {
            return Err(Error::Malformed("bit-packed word count".into()));
        }
        Ok(BitPackedInts { bits, len, words })
    }
}

/// Plain bitvector with constant-time rank and logarithmic select.
#[derive(Clone, Debug)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
    // ones before each word; one extra entry holding the total
    cum: Vec<usize>,
}

impl PartialEq for BitVector {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.words == other.words
    }
}

impl Eq for BitVector {}

impl BitVector {
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    /// Bitvector of length `len` with ones at the given positions.
    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for p in ones {
            assert!(p < len);
            words[p / 64] |= 1 << (p % 64);
        }
        Self::from_words(words, len)
    }

    fn from_words(words: Vec<u64>, len: usize) -> Self {
        let mut cum = Vec::with_capacity(words.len() + 1);
        let mut acc = 0;
        for w in &words {
            cum.push(acc);
            acc += w.count_ones() as usize;
        }
        cum.push(acc);
        BitVector { len, words, cum }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.cum[self.words.len()]
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Ones strictly before position `i` (`i <= len`).
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let (w, off) = (i / 64, i % 64);
        if off == 0 {
            return self.cum[w];
        }
        self.cum[w] + (self.words[w] & ((1u64 << off) - 1)).count_ones() as usize
    }

    /// Position of the `k`-th one, counting from zero.
    pub fn select1(&self, k: usize) -> Option<usize> {
        if k >= self.count_ones() {
            return None;
        }
        // last word whose preceding count is <= k
        let w = self.cum.partition_point(|&c| c <= k) - 1;
        let mut word = self.words[w];
        for _ in 0..k - self.cum[w] {
            word &= word - 1;
        }
        Some(w * 64 + word.trailing_zeros() as usize)
    }

    /// Heap bytes of the persisted representation (length + words).
    pub fn stored_bytes(&self) -> usize {
        8 + 8 + 8 * self.words.len()
    }

    pub(crate) fn write(&self, out: &mut ByteWriter) {
        out.u64(self.len as u64);
        out.words(&self.words);
    }

    pub(crate) fn read(r: &mut ByteReader) -> Result<Self> {
        let len = r.len()?;
        let words = r.words()?;
        if words.len() != len.div_ceil(64) {
            return Err(Error::Malformed("bitvector word count".into()));
        }
        if len % 64 != 0 && words.last().is_some_and(|w| w >> (len % 64) != 0) {
            return Err(Error::Malformed("bitvector padding".into()));
        }
        Ok(Self::from_words(words, len))
    }
}

/// Elias-Fano coding of a non-decreasing sequence over `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliasFano {
    universe: usize,
    low_bits: u8,
    lows: BitPackedInts,
    highs: BitVector,
}

impl EliasFano {
    pub fn new(values: &[usize], universe: usize) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.last().is_none_or(|&v| v < universe.max(1)));
        let k = values.len();
        let low_bits = if k == 0 || universe <= k {
            0
        } else {
            bit_width((universe / k) as u64).saturating_sub(1)
        };
        let mask = if low_bits == 0 { 0 } else { (1u64 << low_bits) - 1 };
        let lows = BitPackedInts::new(values.iter().map(|&v| v as u64 & mask), low_bits);
        let high_len = k + (universe >> low_bits) + 1;
        let highs = BitVector::from_ones(
            high_len,
            values
                .iter()
                .enumerate()
                .map(|(i, &v)| (v >> low_bits) + i),
        );
        EliasFano {
            universe,
            low_bits,
            lows,
            highs,
        }
    }

    pub fn len(&self) -> usize {
        self.lows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lows.is_empty()
    }

    pub fn get(&self, i: usize) -> usize {
        let high = self.highs.select1(i).expect("index within sequence") - i;
        (high << self.low_bits) | self.lows.get(i) as usize
    }

    pub(crate) fn write(&self, out: &mut ByteWriter) {
        out.u64(self.universe as u64);
        out.u8(self.low_bits);
        self.lows.write(out);
        self.highs.write(out);
    }

    pub(crate) fn read(r: &mut ByteReader) -> Result<Self> {
        let universe = r.len()?;
        let low_bits = r.u8()?;
        let lows = BitPackedInts::read(r)?;
        let highs = BitVector::read(r)?;
        if low_bits >= 64 || lows.bits != low_bits || highs.count_ones() != lows.len() {
            return Err(Error::Malformed("elias-fano layout".into()));
        }
        Ok(EliasFano {
            universe,
            low_bits,
            lows,
            highs,
        })
    }
}

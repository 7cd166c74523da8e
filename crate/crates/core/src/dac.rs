//! Directly addressable codes with escaping.
//!
//! A value is split into `chunk_bits`-bit chunks stored level by level. Level
//! `k` holds one chunk for every value that reaches it, plus a bit telling
//! whether the value continues; the continuing values are found on level
//! `k + 1` by rank. A value still continuing after `max_levels` levels is
//! escaped: it is stored whole in an overflow table addressed by rank over
//! the last level's continuation bits.

use crate::bits::{BitPackedInts, BitVector, PackedInts};
use crate::codec::{ByteReader, ByteWriter};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DacParams {
    pub chunk_bits: u8,
    pub max_levels: u8,
}

impl DacParams {
    pub const CHUNK_BITS: u8 = 4;
    pub const MAX_LEVELS: u8 = 2;
}

impl Default for DacParams {
    fn default() -> Self {
        DacParams {
            chunk_bits: Self::CHUNK_BITS,
            max_levels: Self::MAX_LEVELS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    chunks: BitPackedInts,
    more: BitVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dac {
    params: DacParams,
    levels: Vec<Level>,
    overflow: PackedInts,
}

impl Dac {
    pub fn new(values: &[usize], params: DacParams) -> Self {
        assert!(params.chunk_bits >= 1 && params.max_levels >= 1);
        assert!((params.chunk_bits as u32) * (params.max_levels as u32) < 64);
        let b = params.chunk_bits as u32;
        let mask = (1u64 << b) - 1;
        let mut levels = Vec::new();
        let mut current: Vec<u64> = values.iter().map(|&v| v as u64).collect();
        let mut escaped = Vec::new();
        for k in 0..params.max_levels as u32 {
            let chunks = BitPackedInts::new(current.iter().map(|&v| (v >> (k * b)) & mask), params.chunk_bits);
            let more = BitVector::from_bits(current.iter().map(|&v| v >> ((k + 1) * b) != 0));
            let next: Vec<u64> = current
                .iter()
                .copied()
                .filter(|&v| v >> ((k + 1) * b) != 0)
                .collect();
            levels.push(Level { chunks, more });
            if k + 1 == params.max_levels as u32 {
                escaped = next;
                break;
            }
            current = next;
        }
        let escaped: Vec<usize> = escaped.into_iter().map(|v| v as usize).collect();
        Dac {
            params,
            levels,
            overflow: PackedInts::new(&escaped, 0),
        }
    }

    pub fn len(&self) -> usize {
        self.levels[0].chunks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn params(&self) -> DacParams {
        self.params
    }

    /// Values diverted to the overflow table.
    pub fn escaped(&self) -> usize {
        self.overflow.len()
    }

    pub fn get(&self, i: usize) -> usize {
        let b = self.params.chunk_bits as u32;
        let mut idx = i;
        let mut v = 0u64;
        for (k, level) in self.levels.iter().enumerate() {
            v |= level.chunks.get(idx) << (k as u32 * b);
            if !level.more.get(idx) {
                return v as usize;
            }
            idx = level.more.rank1(idx);
        }
        self.overflow.get(idx)
    }

    pub(crate) fn write(&self, out: &mut ByteWriter) {
        out.u8(self.params.chunk_bits);
        out.u8(self.params.max_levels);
        for level in &self.levels {
            level.chunks.write(out);
            level.more.write(out);
        }
        self.overflow.write(out);
    }

    pub(crate) fn read(r: &mut ByteReader) -> Result<Self> {
        let params = DacParams {
            chunk_bits: r.u8()?,
            max_levels: r.u8()?,
        };
        if params.chunk_bits == 0
            || params.max_levels == 0
            || params.chunk_bits as u32 * params.max_levels as u32 >= 64
        {
            return Err(Error::Malformed("dac parameters".into()));
        }
        let mut levels = Vec::new();
        let mut expect = None;
        for _ in 0..params.max_levels {
            let chunks = BitPackedInts::read(r)?;
            let more = BitVector::read(r)?;
            if chunks.len() != more.len() || expect.is_some_and(|e| e != chunks.len()) {
                return Err(Error::Malformed("dac level sizes".into()));
            }
            expect = Some(more.count_ones());
            levels.push(Level { chunks, more });
        }
        let overflow = PackedInts::read(r)?;
        if Some(overflow.len()) != expect {
            return Err(Error::Malformed("dac overflow size".into()));
        }
        Ok(Dac {
            params,
            levels,
            overflow,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn levels_and_escapes() {
        let values = [0, 15, 16, 255, 256, 70_000, 3];
        let dac = Dac::new(&values, DacParams::default());
        assert_eq!(dac.escaped(), 2);
        for (i, &v) in values.iter().enumerate() {
            assert_eq!(dac.get(i), v);
        }
    }

    #[test]
    fn empty() {
        let dac = Dac::new(&[], DacParams::default());
        assert!(dac.is_empty());
    }

    proptest! {
        #[test]
        fn lossless(values in prop::collection::vec(prop_oneof![0usize..20, 0usize..300, 0usize..1 << 30], 0..200),
                    chunk_bits in 1u8..9, max_levels in 1u8..4) {
            let dac = Dac::new(&values, DacParams { chunk_bits, max_levels });
            for (i, &v) in values.iter().enumerate() {
                prop_assert_eq!(dac.get(i), v);
            }
            let mut w = ByteWriter::default();
            dac.write(&mut w);
            let bytes = w.into_inner();
            let mut r = ByteReader::new(&bytes);
            prop_assert_eq!(Dac::read(&mut r).unwrap(), dac);
            prop_assert_eq!(r.remaining(), 0);
        }
    }
}

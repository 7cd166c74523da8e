//! Storage variants for the threshold LCEs.
//!
//! | variant   | per-entry storage                                        |
//! |-----------|----------------------------------------------------------|
//! | `phoni`   | none (plain thresholds, every jump queries)              |
//! | `full`    | packed integer wide enough for `n`                        |
//! | `byte`    | one byte; 255 means "too large, query instead"           |
//! | `bv-full` | usage bitvector, packed integers for used entries         |
//! | `bv-byte` | usage bitvector, one byte for used entries below 256      |
//! | `dac`     | directly addressable codes with escaping                  |
//! | `bv-dac`  | usage bitvector, DAC over used entries                    |
//!
//! A lookup answers either the exact stored LCE or `None`; it never reports
//! a larger value than the true one.

use std::fmt;
use std::str::FromStr;

use crate::bits::{BitVector, PackedInts};
use crate::codec::{ByteReader, ByteWriter};
use crate::dac::{Dac, DacParams};
use crate::error::{Error, Result};
use crate::thresholds::{LceSide, RawThresholds};

/// Byte code reserved for values that do not fit.
pub const BYTE_OVERFLOW: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LceEncoding {
    Full,
    Byte,
    BvFull,
    BvByte,
    Dac,
    BvDac,
}

/// An index variant: the baseline without threshold LCEs, or one of the
/// augmented encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Phoni,
    Augmented(LceEncoding),
}

impl Variant {
    pub const ALL: [Variant; 7] = [
        Variant::Phoni,
        Variant::Augmented(LceEncoding::Full),
        Variant::Augmented(LceEncoding::Byte),
        Variant::Augmented(LceEncoding::BvFull),
        Variant::Augmented(LceEncoding::BvByte),
        Variant::Augmented(LceEncoding::Dac),
        Variant::Augmented(LceEncoding::BvDac),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Phoni => "phoni",
            Variant::Augmented(LceEncoding::Full) => "full",
            Variant::Augmented(LceEncoding::Byte) => "byte",
            Variant::Augmented(LceEncoding::BvFull) => "bv-full",
            Variant::Augmented(LceEncoding::BvByte) => "bv-byte",
            Variant::Augmented(LceEncoding::Dac) => "dac",
            Variant::Augmented(LceEncoding::BvDac) => "bv-dac",
        }
    }

    pub(crate) fn tag(self) -> u8 {
        Self::ALL.iter().position(|&v| v == self).unwrap() as u8
    }

    pub(crate) fn from_tag(tag: u8) -> Result<Self> {
        Self::ALL
            .get(tag as usize)
            .copied()
            .ok_or(Error::UnsupportedEncoding(tag))
    }

    pub fn encoding(self) -> Option<LceEncoding> {
        match self {
            Variant::Phoni => None,
            Variant::Augmented(e) => Some(e),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownEncoding(s.to_string()))
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Column {
    Full(PackedInts),
    Byte(Vec<u8>),
    BvFull { used: BitVector, values: PackedInts },
    BvByte { used: BitVector, values: Vec<u8> },
    Dac(Dac),
    BvDac { used: BitVector, values: Dac },
}

impl Column {
    fn encode(raw: &[Option<usize>], encoding: LceEncoding, n: usize) -> Self {
        let dense = || raw.iter().map(|v| v.unwrap_or(0)).collect::<Vec<_>>();
        let marked = |keep: &dyn Fn(usize) -> bool| {
            let used = BitVector::from_bits(raw.iter().map(|v| v.is_some_and(keep)));
            let values: Vec<usize> = raw.iter().flatten().copied().filter(|&v| keep(v)).collect();
            (used, values)
        };
        match encoding {
            LceEncoding::Full => Column::Full(PackedInts::new(&dense(), n)),
            LceEncoding::Byte => Column::Byte(
                dense()
                    .into_iter()
                    .map(|v| if v < BYTE_OVERFLOW as usize { v as u8 } else { BYTE_OVERFLOW })
                    .collect(),
            ),
            LceEncoding::BvFull => {
                let (used, values) = marked(&|_| true);
                Column::BvFull {
                    used,
                    values: PackedInts::new(&values, n),
                }
            }
            LceEncoding::BvByte => {
                let (used, values) = marked(&|v| v <= u8::MAX as usize);
                Column::BvByte {
                    used,
                    values: values.into_iter().map(|v| v as u8).collect(),
                }
            }
            LceEncoding::Dac => Column::Dac(Dac::new(&dense(), DacParams::default())),
            LceEncoding::BvDac => {
                let (used, values) = marked(&|_| true);
                Column::BvDac {
                    used,
                    values: Dac::new(&values, DacParams::default()),
                }
            }
        }
    }

    #[inline]
    fn get(&self, x: usize) -> Option<usize> {
        match self {
            Column::Full(values) => Some(values.get(x)),
            Column::Byte(values) => Some(values[x]).filter(|&b| b != BYTE_OVERFLOW).map(usize::from),
            Column::BvFull { used, values } => used.get(x).then(|| values.get(used.rank1(x))),
            Column::BvByte { used, values } => used.get(x).then(|| values[used.rank1(x)] as usize),
            Column::Dac(values) => Some(values.get(x)),
            Column::BvDac { used, values } => used.get(x).then(|| values.get(used.rank1(x))),
        }
    }

    fn len(&self) -> usize {
        match self {
            Column::Full(v) => v.len(),
            Column::Byte(v) => v.len(),
            Column::BvFull { used, .. } | Column::BvByte { used, .. } | Column::BvDac { used, .. } => used.len(),
            Column::Dac(v) => v.len(),
        }
    }

    fn write(&self, out: &mut ByteWriter) {
        match self {
            Column::Full(values) => values.write(out),
            Column::Byte(values) => {
                out.u64(values.len() as u64);
                out.bytes(values);
            }
            Column::BvFull { used, values } => {
                used.write(out);
                values.write(out);
            }
            Column::BvByte { used, values } => {
                used.write(out);
                out.u64(values.len() as u64);
                out.bytes(values);
            }
            Column::Dac(values) => values.write(out),
            Column::BvDac { used, values } => {
                used.write(out);
                values.write(out);
            }
        }
    }

    fn read(r: &mut ByteReader, encoding: LceEncoding) -> Result<Self> {
        let bytes = |r: &mut ByteReader| -> Result<Vec<u8>> {
            let k = r.len()?;
            Ok(r.bytes(k)?.to_vec())
        };
        let check = |used: &BitVector, stored: usize| {
            if used.count_ones() == stored {
                Ok(())
            } else {
                Err(Error::Malformed("usage bitvector does not match payload".into()))
            }
        };
        Ok(match encoding {
            LceEncoding::Full => Column::Full(PackedInts::read(r)?),
            LceEncoding::Byte => Column::Byte(bytes(r)?),
            LceEncoding::BvFull => {
                let used = BitVector::read(r)?;
                let values = PackedInts::read(r)?;
                check(&used, values.len())?;
                Column::BvFull { used, values }
            }
            LceEncoding::BvByte => {
                let used = BitVector::read(r)?;
                let values = bytes(r)?;
                check(&used, values.len())?;
                Column::BvByte { used, values }
            }
            LceEncoding::Dac => Column::Dac(Dac::read(r)?),
            LceEncoding::BvDac => {
                let used = BitVector::read(r)?;
                let values = Dac::read(r)?;
                check(&used, values.len())?;
                Column::BvDac { used, values }
            }
        })
    }
}

/// Encoded threshold LCEs for both sides of every run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdLces {
    encoding: LceEncoding,
    e: Column,
    s: Column,
}

impl ThresholdLces {
    /// `n` is the text length; full-width encodings size their integers for it.
    pub fn encode(raw: &RawThresholds, encoding: LceEncoding, n: usize) -> Self {
        ThresholdLces {
            encoding,
            e: Column::encode(&raw.column(LceSide::E), encoding, n),
            s: Column::encode(&raw.column(LceSide::S), encoding, n),
        }
    }

    pub fn encoding(&self) -> LceEncoding {
        self.encoding
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Stored LCE of run `x` on `side`, or `None` when this encoding cannot
    /// tell (overflow or not stored).
    #[inline]
    pub fn lookup(&self, x: usize, side: LceSide) -> Option<usize> {
        match side {
            LceSide::E => self.e.get(x),
            LceSide::S => self.s.get(x),
        }
    }

    pub(crate) fn write(&self, out: &mut ByteWriter) {
        out.u8(Variant::Augmented(self.encoding).tag());
        self.e.write(out);
        self.s.write(out);
    }

    pub(crate) fn read(r: &mut ByteReader, runs: usize) -> Result<Self> {
        let encoding = Variant::from_tag(r.u8()?)?
            .encoding()
            .ok_or_else(|| Error::Malformed("threshold LCE section for the baseline variant".into()))?;
        let e = Column::read(r, encoding)?;
        let s = Column::read(r, encoding)?;
        r.finish()?;
        if e.len() != runs || s.len() != runs {
            return Err(Error::Malformed("threshold LCE column length".into()));
        }
        Ok(ThresholdLces { encoding, e, s })
    }
}

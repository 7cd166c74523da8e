//! Versioned binary index file.
//!
//! ```text
//! header
//!   magic            8 bytes  "AUGMSIDX"
//!   version          u32      1
//!   n                u64
//!   r                u64
//!   sigma            u8
//!   alphabet         sigma bytes, increasing
//!   sentinel         u8
//!   encoding tag     u8       phoni=0 full=1 byte=2 bv-full=3 bv-byte=4 dac=5 bv-dac=6
//!   lce backend tag  u8       naive=0 lcp-rmq=1
//!   threshold tag    u8       array=0 sigma-bv=1
//!   section count    u8
//!   header crc32     u32      over every header byte before it
//! sections, in id order
//!   id               u8       1 runs, 2 samples, 3 thresholds, 4 threshold LCEs, 5 LCE backend
//!   length           u64      payload bytes
//!   payload
//!   crc32            u32      over the payload
//! ```
//!
//! All integers are little-endian. The threshold LCE section is absent for
//! the `phoni` variant.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::codec::{ByteReader, ByteWriter};
use crate::encoding::{ThresholdLces, Variant};
use crate::error::{Error, Result};
use crate::index::MsIndex;
use crate::lce::{LceBackend, LceBackendKind};
use crate::rlbwt::Rlbwt;
use crate::thresholds::{ThresholdStorage, ThresholdTable};

pub const MAGIC: &[u8; 8] = b"AUGMSIDX";
pub const VERSION: u32 = 1;
/// Framing around each section payload: id, length and checksum.
pub const SECTION_OVERHEAD: usize = 1 + 8 + 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Section {
    Runs,
    Samples,
    Thresholds,
    ThresholdLces,
    LceBackend,
}

impl Section {
    pub const ALL: [Section; 5] = [
        Section::Runs,
        Section::Samples,
        Section::Thresholds,
        Section::ThresholdLces,
        Section::LceBackend,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Runs => "runs",
            Section::Samples => "samples",
            Section::Thresholds => "thresholds",
            Section::ThresholdLces => "threshold_lces",
            Section::LceBackend => "lce_backend",
        }
    }

    fn id(self) -> u8 {
        Self::ALL.iter().position(|&s| s == self).unwrap() as u8 + 1
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Byte accounting of one serialized index. Section sizes include framing,
/// so `header + sum(sections) = total`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SizeReport {
    pub header: usize,
    pub sections: Vec<(Section, usize)>,
    pub total: usize,
}

impl SizeReport {
    /// Framed size of `section`, 0 when absent.
    pub fn section(&self, section: Section) -> usize {
        self.sections
            .iter()
            .find(|(s, _)| *s == section)
            .map_or(0, |(_, b)| *b)
    }
}

pub fn to_bytes(index: &MsIndex) -> (Vec<u8>, SizeReport) {
    let mut payloads: Vec<(Section, Vec<u8>)> = Vec::new();
    let mut push = |section, fill: &dyn Fn(&mut ByteWriter)| {
        let mut w = ByteWriter::default();
        fill(&mut w);
        payloads.push((section, w.into_inner()));
    };
    push(Section::Runs, &|w| index.rlbwt.write_runs(w));
    push(Section::Samples, &|w| index.rlbwt.write_samples(w));
    push(Section::Thresholds, &|w| index.thresholds.write(w));
    if let Some(lces) = &index.lces {
        push(Section::ThresholdLces, &|w| lces.write(w));
    }
    push(Section::LceBackend, &|w| index.lce.write(w));

    let mut out = ByteWriter::default();
    out.bytes(MAGIC);
    out.u32(VERSION);
    out.u64(index.len() as u64);
    out.u64(index.runs() as u64);
    out.u8(index.alphabet.len() as u8);
    out.bytes(&index.alphabet);
    out.u8(index.sentinel);
    out.u8(index.variant.tag());
    out.u8(index.lce.kind().tag());
    out.u8(index.thresholds.storage().tag());
    out.u8(payloads.len() as u8);
    let mut bytes = out.into_inner();
    let crc = crc32fast::hash(&bytes);
    bytes.extend_from_slice(&crc.to_le_bytes());
    let header = bytes.len();

    let mut sections = Vec::with_capacity(payloads.len());
    for (section, payload) in payloads {
        bytes.push(section.id());
        bytes.extend_from_slice(&(payload.len() as u64).to_le_bytes());
        bytes.extend_from_slice(&payload);
        bytes.extend_from_slice(&crc32fast::hash(&payload).to_le_bytes());
        sections.push((section, payload.len() + SECTION_OVERHEAD));
    }
    let total = bytes.len();
    (
        bytes,
        SizeReport {
            header,
            sections,
            total,
        },
    )
}

/// Size accounting without writing anything.
pub fn size_report(index: &MsIndex) -> SizeReport {
    to_bytes(index).1
}

pub fn save(index: &MsIndex, path: impl AsRef<Path>) -> Result<SizeReport> {
    let (bytes, report) = to_bytes(index);
    fs::write(path, &bytes)?;
    Ok(report)
}

pub fn load(path: impl AsRef<Path>) -> Result<MsIndex> {
    from_bytes(&fs::read(path)?)
}

pub fn from_bytes(bytes: &[u8]) -> Result<MsIndex> {
    if bytes.len() < MAGIC.len() || &bytes[..MAGIC.len()] != MAGIC {
        return Err(Error::BadMagic);
    }
    let mut r = ByteReader::new(bytes);
    r.bytes(MAGIC.len())?;
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let n = r.len()?;
    let runs = r.len()?;
    let sigma = r.u8()? as usize;
    let alphabet = r.bytes(sigma)?.to_vec();
    let sentinel = r.u8()?;
    let variant = Variant::from_tag(r.u8()?)?;
    let backend = LceBackendKind::from_tag(r.u8()?)?;
    let storage = ThresholdStorage::from_tag(r.u8()?)?;
    let count = r.u8()? as usize;
    let header_end = r.position();
    let crc = r.u32()?;
    if crc != crc32fast::hash(&bytes[..header_end]) {
        return Err(Error::ChecksumMismatch("header"));
    }

    let expected: Vec<Section> = Section::ALL
        .into_iter()
        .filter(|&s| s != Section::ThresholdLces || variant != Variant::Phoni)
        .collect();
    if count != expected.len() {
        return Err(Error::Malformed(format!("{count} sections, expected {}", expected.len())));
    }
    let mut payloads = Vec::with_capacity(count);
    for &section in &expected {
        let id = r.u8()?;
        if id != section.id() {
            return Err(Error::Malformed(format!("section id {id}, expected {}", section.id())));
        }
        let len = r.len()?;
        let payload = r.bytes(len)?;
        if r.u32()? != crc32fast::hash(payload) {
            return Err(Error::ChecksumMismatch(section.name()));
        }
        payloads.push(payload);
    }
    if r.remaining() != 0 {
        return Err(Error::Malformed("trailing bytes after last section".into()));
    }

    let mut next = payloads.into_iter().map(ByteReader::new);
    let mut runs_r = next.next().unwrap();
    let mut samples_r = next.next().unwrap();
    let rlbwt = Rlbwt::read(&mut runs_r, &mut samples_r)?;
    if rlbwt.len() != n || rlbwt.runs() != runs {
        return Err(Error::Malformed("header does not match run table".into()));
    }
    if alphabet.windows(2).any(|w| w[0] >= w[1])
        || alphabet.iter().any(|&c| c <= sentinel)
        || rlbwt.count(sentinel) != 1
        || alphabet.iter().map(|&c| rlbwt.count(c)).sum::<usize>() + 1 != n
    {
        return Err(Error::Malformed("alphabet does not match run table".into()));
    }
    let thresholds = ThresholdTable::read(&mut next.next().unwrap(), storage, &rlbwt)?;
    let lces = match variant {
        Variant::Phoni => None,
        Variant::Augmented(enc) => {
            let lces = ThresholdLces::read(&mut next.next().unwrap(), runs)?;
            if lces.encoding() != enc {
                return Err(Error::Malformed("threshold LCE encoding differs from header".into()));
            }
            Some(lces)
        }
    };
    let lce = LceBackend::read(&mut next.next().unwrap(), backend, n)?;
    Ok(MsIndex::assemble(
        alphabet, sentinel, variant, rlbwt, thresholds, lces, lce,
    ))
}

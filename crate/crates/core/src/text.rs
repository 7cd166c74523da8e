//! The indexed text: a byte sequence closed by a unique, minimal sentinel.

use crate::error::{Error, Result};

/// Sentinel appended by [`Text::from_sequence`].
pub const SENTINEL: u8 = 0x00;
/// Separator placed between records by [`Text::from_records`]. It is part of
/// the index alphabet but never occurs in a pattern.
pub const RECORD_SEPARATOR: u8 = 0x01;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>,
    alphabet: Vec<u8>,
}

impl Text {
    /// Appends [`SENTINEL`] to `seq`. The sequence must be non-empty and must
    /// not contain the sentinel byte.
    pub fn from_sequence(seq: &[u8]) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::EmptyText);
        }
        if seq.contains(&SENTINEL) {
            return Err(Error::ReservedByte(SENTINEL));
        }
        let mut bytes = Vec::with_capacity(seq.len() + 1);
        bytes.extend_from_slice(seq);
        bytes.push(SENTINEL);
        Self::with_sentinel(bytes)
    }

    /// Joins records with [`RECORD_SEPARATOR`] so that no match can span two
    /// records, then appends the sentinel.
    pub fn from_records<R: AsRef<[u8]>>(records: &[R]) -> Result<Self> {
        let mut seq = Vec::new();
        for (k, rec) in records.iter().enumerate() {
            let rec = rec.as_ref();
            if let Some(&b) = rec
                .iter()
                .find(|&&b| b == SENTINEL || b == RECORD_SEPARATOR)
            {
                return Err(Error::ReservedByte(b));
            }
            if k > 0 {
                seq.push(RECORD_SEPARATOR);
            }
            seq.extend_from_slice(rec);
        }
        Self::from_sequence(&seq)
    }

    /// Takes a text whose last byte already is the sentinel, e.g. `b"abracadabra$"`.
    pub fn with_sentinel(bytes: Vec<u8>) -> Result<Self> {
        let Some((&sentinel, body)) = bytes.split_last() else {
            return Err(Error::EmptyText);
        };
        if body.is_empty() {
            return Err(Error::EmptyText);
        }
        let mut seen = [false; 256];
        for &b in body {
            if b <= sentinel {
                return Err(Error::InvalidSentinel);
            }
            seen[b as usize] = true;
        }
        let alphabet = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Ok(Text { bytes, alphabet })
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn sentinel(&self) -> u8 {
        self.bytes[self.bytes.len() - 1]
    }

    /// Distinct non-sentinel symbols in increasing order.
    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }
}

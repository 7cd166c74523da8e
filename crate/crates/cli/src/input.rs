//! Sequence and pattern file parsing.
//!
//! A file whose first non-blank byte is `>` is read as FASTA; anything else
//! is raw. Letters are upper-cased. Line breaks never belong to a sequence.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use augms::text::{RECORD_SEPARATOR, SENTINEL};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub id: String,
    pub seq: Vec<u8>,
}

fn canonical(line: &[u8]) -> impl Iterator<Item = u8> + '_ {
    line.iter()
        .filter(|&&b| b != b'\r')
        .map(|b| b.to_ascii_uppercase())
}

fn is_fasta(bytes: &[u8]) -> bool {
    bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'>')
}

fn parse_fasta(bytes: &[u8]) -> Vec<Record> {
    let mut records: Vec<Record> = Vec::new();
    for line in bytes.split(|&b| b == b'\n') {
        if let Some(header) = line.strip_prefix(b">") {
            let header = String::from_utf8_lossy(header);
            let id = header.split_whitespace().next().unwrap_or("").to_string();
            records.push(Record {
                id: if id.is_empty() {
                    (records.len() + 1).to_string()
                } else {
                    id
                },
                seq: Vec::new(),
            });
        } else if let Some(last) = records.last_mut() {
            last.seq.extend(canonical(line));
        }
    }
    records
}

fn check_reserved(seq: &[u8], what: &str) -> Result<()> {
    if let Some(at) = seq.iter().position(|&b| b == SENTINEL || b == RECORD_SEPARATOR) {
        bail!("{what} contains reserved byte 0x{:02x} at offset {at}", seq[at]);
    }
    Ok(())
}

/// Text records: FASTA records in order, or the whole raw file as one.
pub fn read_text(path: &Path) -> Result<Vec<Record>> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let records = if is_fasta(&bytes) {
        parse_fasta(&bytes)
    } else {
        let seq: Vec<u8> = bytes
            .split(|&b| b == b'\n')
            .flat_map(canonical)
            .collect();
        vec![Record {
            id: "1".into(),
            seq,
        }]
    };
    for r in &records {
        check_reserved(&r.seq, &format!("record {}", r.id))?;
    }
    let records: Vec<Record> = records.into_iter().filter(|r| !r.seq.is_empty()).collect();
    if records.is_empty() {
        bail!("{} holds no sequence", path.display());
    }
    Ok(records)
}

/// Patterns: FASTA records, or one non-empty line each (ids are line
/// numbers).
pub fn read_patterns(path: &Path) -> Result<Vec<Record>> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let records = if is_fasta(&bytes) {
        parse_fasta(&bytes)
    } else {
        bytes
            .split(|&b| b == b'\n')
            .enumerate()
            .map(|(k, line)| Record {
                id: (k + 1).to_string(),
                seq: canonical(line).collect(),
            })
            .filter(|r| !r.seq.is_empty())
            .collect()
    };
    for r in &records {
        check_reserved(&r.seq, &format!("pattern {}", r.id))?;
        if r.seq.is_empty() {
            bail!("pattern {} is empty", r.id);
        }
    }
    Ok(records)
}

pub fn write_fasta(path: &Path, records: &[Record]) -> Result<()> {
    let mut out = Vec::new();
    for r in records {
        out.push(b'>');
        out.extend_from_slice(r.id.as_bytes());
        out.push(b'\n');
        for chunk in r.seq.chunks(80) {
            out.extend_from_slice(chunk);
            out.push(b'\n');
        }
    }
    fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))
}

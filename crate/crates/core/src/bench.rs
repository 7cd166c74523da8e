//! Query benchmarks over several index variants, reported as CSV rows.
//!
//! Columns, in order:
//! `variant, mode, lce_backend, threshold_storage, n, r, n_over_r,
//! index_bytes, header_bytes, runs_bytes, samples_bytes, thresholds_bytes,
//! threshold_lces_bytes, lce_backend_bytes, patterns, repeats,
//! total_query_us, mean_query_us, direct_extensions, jumps, lce_calls,
//! lce_skips, skip_fraction, ms_checksum`.
//!
//! Section byte counts include their framing. Timings cover the query loop
//! only and are averaged over the repeats; counters come from one repeat.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::encoding::Variant;
use crate::error::Result;
use crate::index::{BuildContext, MsIndex};
use crate::io::{self, Section};
use crate::lce::LceBackendKind;
use crate::matcher::{compute_ms, MatchingStatistics, Mode, QueryStats};
use crate::text::Text;
use crate::thresholds::{ThresholdStorage, TieBreak};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub variants: Vec<Variant>,
    pub backends: Vec<LceBackendKind>,
    pub storage: ThresholdStorage,
    pub repeats: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            variants: Variant::ALL.to_vec(),
            backends: vec![LceBackendKind::default()],
            storage: ThresholdStorage::default(),
            repeats: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub variant: String,
    pub mode: String,
    pub lce_backend: String,
    pub threshold_storage: String,
    pub n: usize,
    pub r: usize,
    pub n_over_r: String,
    pub index_bytes: usize,
    pub header_bytes: usize,
    pub runs_bytes: usize,
    pub samples_bytes: usize,
    pub thresholds_bytes: usize,
    pub threshold_lces_bytes: usize,
    pub lce_backend_bytes: usize,
    pub patterns: usize,
    pub repeats: usize,
    pub total_query_us: f64,
    pub mean_query_us: f64,
    pub direct_extensions: u64,
    pub jumps: u64,
    pub lce_calls: u64,
    pub lce_skips: u64,
    pub skip_fraction: String,
    pub ms_checksum: String,
}

/// The matching mode a variant is benchmarked in: baseline for `phoni`,
/// augmented otherwise.
pub fn mode_for(variant: Variant) -> Mode {
    match variant {
        Variant::Phoni => Mode::Baseline,
        Variant::Augmented(_) => Mode::Augmented,
    }
}

/// CRC32 over every `(pos, len)` of every pattern, absent positions as
/// `u64::MAX`.
pub fn ms_checksum(all: &[MatchingStatistics]) -> u32 {
    let mut h = crc32fast::Hasher::new();
    for ms in all {
        h.update(&(ms.len() as u64).to_le_bytes());
        for e in ms.iter() {
            h.update(&e.pos.map_or(u64::MAX, |p| p as u64).to_le_bytes());
            h.update(&(e.len as u64).to_le_bytes());
        }
    }
    h.finalize()
}

/// Queries every pattern once, returning the outputs and summed counters.
pub fn query_all(index: &MsIndex, patterns: &[Vec<u8>], mode: Mode) -> Result<(Vec<MatchingStatistics>, QueryStats)> {
    let mut stats = QueryStats::default();
    let out = patterns
        .iter()
        .map(|p| compute_ms(index, p, mode, &mut stats))
        .collect::<Result<Vec<_>>>()?;
    Ok((out, stats))
}

pub fn bench_index(index: &MsIndex, patterns: &[Vec<u8>], repeats: usize) -> Result<BenchRecord> {
    let repeats = repeats.max(1);
    let mode = mode_for(index.variant());
    let mut elapsed = 0.0;
    let mut first = None;
    for _ in 0..repeats {
        let start = Instant::now();
        let run = query_all(index, patterns, mode)?;
        elapsed += start.elapsed().as_secs_f64() * 1e6;
        first.get_or_insert(run);
    }
    let (outputs, stats) = first.expect("at least one repeat");
    let sizes = io::size_report(index);
    let total_query_us = elapsed / repeats as f64;
    let consulted = stats.lce_calls + stats.lce_skips;
    Ok(BenchRecord {
        variant: index.variant().name().into(),
        mode: mode.name().into(),
        lce_backend: index.lce_backend_kind().name().into(),
        threshold_storage: index.threshold_storage().name().into(),
        n: index.len(),
        r: index.runs(),
        n_over_r: format!("{:.2}", index.len() as f64 / index.runs() as f64),
        index_bytes: sizes.total,
        header_bytes: sizes.header,
        runs_bytes: sizes.section(Section::Runs),
        samples_bytes: sizes.section(Section::Samples),
        thresholds_bytes: sizes.section(Section::Thresholds),
        threshold_lces_bytes: sizes.section(Section::ThresholdLces),
        lce_backend_bytes: sizes.section(Section::LceBackend),
        patterns: patterns.len(),
        repeats,
        total_query_us,
        mean_query_us: if patterns.is_empty() {
            0.0
        } else {
            total_query_us / patterns.len() as f64
        },
        direct_extensions: stats.direct_extensions,
        jumps: stats.jumps,
        lce_calls: stats.lce_calls,
        lce_skips: stats.lce_skips,
        skip_fraction: format!(
            "{:.4}",
            if consulted == 0 {
                0.0
            } else {
                stats.lce_skips as f64 / consulted as f64
            }
        ),
        ms_checksum: format!("{:08x}", ms_checksum(&outputs)),
    })
}

/// One row per (backend, variant), building each index from shared suffix
/// structures.
pub fn run_bench(text: Text, patterns: &[Vec<u8>], config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let ctx = BuildContext::new(text, TieBreak::default());
    let mut rows = Vec::new();
    for &backend in &config.backends {
        for &variant in &config.variants {
            let index = ctx.index(variant, backend, config.storage);
            rows.push(bench_index(&index, patterns, config.repeats)?);
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(std::io::Error::other)?;
    }
    w.flush()?;
    Ok(())
}

//! One-pass matching statistics, right to left over the pattern.
//!
//! The cursor keeps the current match `(pos, len)` for `P[i + 1..]` and the
//! BWT row `q` with `sa[q] = pos`. For the next symbol `c = P[i]`:
//!
//! * `bwt[q] = c`: the match extends to `(pos - 1, len + 1)`, `q = LF(q)`;
//! * otherwise the cursor jumps to the closest run of `c` above (`e1`) or
//!   below (`s2`) row `q`, picked by the threshold between those runs, and
//!   the new length is `min(LCE(sa[target], pos), len) + 1`.
//!
//! In augmented mode a jump first compares `len` with the stored threshold
//! LCE of its side. If `len` does not exceed it, every row between the
//! target and the threshold shares at least `len` symbols with the target,
//! so the new length is `len + 1` without an LCE query.

use std::ops::{AddAssign, Index};

use crate::error::{Error, Result};
use crate::index::MsIndex;
use crate::rlbwt::RunSide;
use crate::thresholds::LceSide;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Every jump issues an LCE query.
    Baseline,
    /// Jumps consult the stored threshold LCEs first.
    #[default]
    Augmented,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Baseline => "baseline",
            Mode::Augmented => "augmented",
        }
    }
}

/// Counters for one query session.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub direct_extensions: u64,
    pub jumps: u64,
    pub lce_calls: u64,
    pub lce_skips: u64,
}

impl AddAssign for QueryStats {
    fn add_assign(&mut self, rhs: Self) {
        self.direct_extensions += rhs.direct_extensions;
        self.jumps += rhs.jumps;
        self.lce_calls += rhs.lce_calls;
        self.lce_skips += rhs.lce_skips;
    }
}

/// Matching statistic for one pattern position. `pos` is `None` exactly when
/// `len` is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MsEntry {
    pub pos: Option<usize>,
    pub len: usize,
}

impl MsEntry {
    pub const ABSENT: MsEntry = MsEntry { pos: None, len: 0 };
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MatchingStatistics {
    entries: Vec<MsEntry>,
}

impl MatchingStatistics {
    pub fn from_entries(entries: Vec<MsEntry>) -> Self {
        MatchingStatistics { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[MsEntry] {
        &self.entries
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.len).collect()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MsEntry> {
        self.entries.iter()
    }
}

impl Index<usize> for MatchingStatistics {
    type Output = MsEntry;

    fn index(&self, i: usize) -> &MsEntry {
        &self.entries[i]
    }
}

/// Streaming matcher: feed pattern symbols from last to first.
#[derive(Clone, Debug)]
pub struct MsCursor<'a> {
    index: &'a MsIndex,
    mode: Mode,
    verify: bool,
    row: usize,
    current: MsEntry,
    consumed: usize,
}

impl<'a> MsCursor<'a> {
    pub fn new(index: &'a MsIndex, mode: Mode) -> Self {
        MsCursor {
            index,
            mode,
            verify: false,
            row: 0,
            current: MsEntry::ABSENT,
            consumed: 0,
        }
    }

    /// Starts from an explicit state: `entry` is the match of the suffix
    /// already processed and `row` the BWT row with `sa[row] = entry.pos`.
    pub fn with_state(index: &'a MsIndex, mode: Mode, row: usize, entry: MsEntry) -> Result<Self> {
        let n = index.len();
        if row >= n {
            return Err(Error::OutOfRange { pos: row, len: n });
        }
        let mut c = Self::new(index, mode);
        c.row = row;
        c.current = entry;
        Ok(c)
    }

    /// Recompute every skipped length with a real query and fail on any
    /// disagreement. Verification queries are not counted.
    pub fn verify_skips(mut self, on: bool) -> Self {
        self.verify = on;
        self
    }

    pub fn row(&self) -> usize {
        self.row
    }

    pub fn current(&self) -> MsEntry {
        self.current
    }

    /// Processes the symbol to the left of everything fed so far and returns
    /// its matching statistic.
    pub fn push(&mut self, c: u8, stats: &mut QueryStats) -> Result<MsEntry> {
        self.consumed += 1;
        let index = self.index;
        let bwt = index.rlbwt();
        if !index.matches_symbol(c) {
            self.current = MsEntry::ABSENT;
            return Ok(self.current);
        }
        let MsEntry { pos: Some(pos), len } = self.current else {
            // start (or restart after an absent symbol) at the first run of c
            let x = bwt.first_run(c).expect("symbol occurs");
            let sample = bwt.sample(x, RunSide::Start);
            self.current = MsEntry {
                pos: Some(sample - 1),
                len: 1,
            };
            self.row = bwt.lf_at(bwt.run_start(x), x);
            return Ok(self.current);
        };

        let q = self.row;
        let qx = bwt.run_at(q);
        if bwt.head(qx) == c {
            stats.direct_extensions += 1;
            self.current = MsEntry {
                pos: Some(pos - 1),
                len: len + 1,
            };
            self.row = bwt.lf_at(q, qx);
            return Ok(self.current);
        }

        stats.jumps += 1;
        let (above, below) = bwt.neighbour_runs(c, q);
        // (target run, side of the run, stored bound usable for a skip)
        let (x, side, bound) = match (above, below) {
            (None, Some(x)) => (x, RunSide::Start, None),
            (Some(x), None) => (x, RunSide::End, None),
            (Some(up), Some(down)) => {
                let t = index
                    .thresholds()
                    .get(bwt, down)
                    .expect("a run with an earlier run of its symbol has a threshold");
                let lces = index.threshold_lces().filter(|_| self.mode == Mode::Augmented);
                if q < t {
                    (up, RunSide::End, lces.and_then(|l| l.lookup(down, LceSide::E)))
                } else {
                    (down, RunSide::Start, lces.and_then(|l| l.lookup(down, LceSide::S)))
                }
            }
            (None, None) => unreachable!("symbol occurs"),
        };
        let target_row = match side {
            RunSide::Start => bwt.run_start(x),
            RunSide::End => bwt.run_end(x),
        };
        let sample = bwt.sample(x, side);
        let new_len = if bound.is_some_and(|b| len <= b) {
            stats.lce_skips += 1;
            if self.verify {
                let actual = index.lce_backend().lce_uncounted(sample, pos).min(len) + 1;
                if actual != len + 1 {
                    return Err(Error::UnsoundSkip {
                        index: self.consumed,
                        skipped: len + 1,
                        actual,
                    });
                }
            }
            len + 1
        } else {
            index.lce_backend().lce(sample, pos, stats)?.min(len) + 1
        };
        self.current = MsEntry {
            pos: Some(sample - 1),
            len: new_len,
        };
        self.row = bwt.lf_at(target_row, x);
        Ok(self.current)
    }
}

/// Matching statistics of `pattern` against the indexed text.
pub fn compute_ms(index: &MsIndex, pattern: &[u8], mode: Mode, stats: &mut QueryStats) -> Result<MatchingStatistics> {
    run(MsCursor::new(index, mode), pattern, stats)
}

/// As [`compute_ms`], but every skipped LCE is recomputed and checked.
pub fn compute_ms_verified(
    index: &MsIndex,
    pattern: &[u8],
    mode: Mode,
    stats: &mut QueryStats,
) -> Result<MatchingStatistics> {
    run(MsCursor::new(index, mode).verify_skips(true), pattern, stats)
}

fn run(mut cursor: MsCursor<'_>, pattern: &[u8], stats: &mut QueryStats) -> Result<MatchingStatistics> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let mut entries = Vec::with_capacity(pattern.len());
    for &c in pattern.iter().rev() {
        entries.push(cursor.push(c, stats)?);
    }
    entries.reverse();
    Ok(MatchingStatistics { entries })
}

/// A maximal exact match `pattern[index..index + len] = text[pos..pos + len]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mem {
    pub index: usize,
    pub pos: usize,
    pub len: usize,
}

/// Matches that are neither extendable to the right (they are the longest
/// match at their start) nor to the left (the previous position's longest
/// match is not one symbol longer).
pub fn extract_mems(ms: &MatchingStatistics, min_len: usize) -> Vec<Mem> {
    let e = ms.entries();
    (0..e.len())
        .filter(|&i| e[i].len >= min_len.max(1) && (i == 0 || e[i - 1].len <= e[i].len))
        .map(|i| Mem {
            index: i,
            pos: e[i].pos.expect("nonzero length has a position"),
            len: e[i].len,
        })
        .collect()
}

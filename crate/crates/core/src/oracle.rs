//! Brute-force reference implementations for testing.
//!
//! Nothing here uses the index structures: suffixes are sorted by direct
//! comparison and every LCE is a character scan. Input sizes are capped by
//! assertion since the checks are quadratic or worse.

use std::collections::BTreeSet;
use std::fmt;

use crate::matcher::{MatchingStatistics, MsEntry};
use crate::thresholds::AugmentedThreshold;

/// Largest text for which the suffix array is built by sorting.
pub const MAX_SORTED_TEXT: usize = 20_000;
/// Largest text accepted by [`OracleSuite::check_thresholds`].
pub const MAX_THRESHOLD_TEXT: usize = 2_000;
/// Largest `n * m` accepted by the matching-statistics scan.
pub const MAX_MS_WORK: usize = 50_000_000;

pub struct OracleSuite {
    text: Vec<u8>,
    sa: Vec<usize>,
}

/// First place where stored thresholds disagree with the text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdViolation {
    pub run: usize,
    pub row: Option<usize>,
    pub reason: String,
}

impl fmt::Display for ThresholdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "run {}", self.run)?;
        if let Some(k) = self.row {
            write!(f, ", row {k}")?;
        }
        write!(f, ": {}", self.reason)
    }
}

impl OracleSuite {
    /// `text` must end with a unique smallest sentinel byte.
    pub fn new(text: &[u8]) -> Self {
        assert!(
            text.len() <= MAX_SORTED_TEXT,
            "oracle text of {} bytes exceeds {MAX_SORTED_TEXT}",
            text.len()
        );
        let mut sa: Vec<usize> = (0..text.len()).collect();
        sa.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
        OracleSuite {
            text: text.to_vec(),
            sa,
        }
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn sa(&self) -> &[usize] {
        &self.sa
    }

    pub fn bwt(&self) -> Vec<u8> {
        let n = self.text.len();
        self.sa.iter().map(|&p| self.text[(p + n - 1) % n]).collect()
    }

    /// Maximal equal-symbol runs of the BWT as `(symbol, first row, last row)`.
    pub fn runs(&self) -> Vec<(u8, usize, usize)> {
        let bwt = self.bwt();
        let mut runs: Vec<(u8, usize, usize)> = Vec::new();
        for (k, &c) in bwt.iter().enumerate() {
            match runs.last_mut() {
                Some(last) if last.0 == c => last.2 = k,
                _ => runs.push((c, k, k)),
            }
        }
        runs
    }

    pub fn lce(&self, i: usize, j: usize) -> usize {
        self.text[i..]
            .iter()
            .zip(&self.text[j..])
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// Whether `s` occurs in the text without touching the sentinel.
    pub fn occurs(&self, s: &[u8]) -> bool {
        self.occurrences(s).next().is_some()
    }

    pub fn occurrences<'a>(&'a self, s: &'a [u8]) -> impl Iterator<Item = usize> + 'a {
        let body = &self.text[..self.text.len() - 1];
        body.windows(s.len().max(1))
            .enumerate()
            .filter(move |(_, w)| !s.is_empty() && *w == s)
            .map(|(p, _)| p)
    }

    /// For each `i`, the longest prefix of `pattern[i..]` occurring in the
    /// text and the leftmost text position where it does.
    pub fn ms(&self, pattern: &[u8]) -> MatchingStatistics {
        let body = &self.text[..self.text.len() - 1];
        assert!(
            body.len().saturating_mul(pattern.len()) <= MAX_MS_WORK,
            "oracle matching statistics input too large"
        );
        // run[j]: length of the common prefix of pattern[i..] and body[j..]
        let mut run = vec![0usize; body.len() + 1];
        let mut entries = vec![MsEntry::ABSENT; pattern.len()];
        for i in (0..pattern.len()).rev() {
            let mut best = MsEntry::ABSENT;
            for j in 0..body.len() {
                run[j] = if pattern[i] == body[j] { run[j + 1] + 1 } else { 0 };
                if run[j] > best.len {
                    best = MsEntry {
                        pos: Some(j),
                        len: run[j],
                    };
                }
            }
            entries[i] = best;
        }
        MatchingStatistics::from_entries(entries)
    }

    /// Compares `ms` with the brute-force lengths and checks every position.
    pub fn check_ms(&self, pattern: &[u8], ms: &MatchingStatistics) -> Result<(), String> {
        let expected = self.ms(pattern);
        if ms.len() != pattern.len() {
            return Err(format!("{} entries for a pattern of length {}", ms.len(), pattern.len()));
        }
        for (i, (got, want)) in ms.iter().zip(expected.iter()).enumerate() {
            if got.len != want.len {
                return Err(format!("i = {i}: len {} expected {}", got.len, want.len));
            }
            match got.pos {
                None if got.len == 0 => {}
                None => return Err(format!("i = {i}: len {} without a position", got.len)),
                Some(p) => {
                    let piece = &pattern[i..i + got.len];
                    let end = p + got.len;
                    if end >= self.text.len() || &self.text[p..end] != piece {
                        return Err(format!("i = {i}: no occurrence of length {} at {p}", got.len));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every `(i, len)` such that `pattern[i..i + len]` occurs in the text but
    /// neither `pattern[i - 1..i + len]` nor `pattern[i..i + len + 1]` does.
    pub fn mems(&self, pattern: &[u8], min_len: usize) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for i in 0..pattern.len() {
            for len in min_len.max(1)..=pattern.len() - i {
                if !self.occurs(&pattern[i..i + len]) {
                    continue;
                }
                let right = i + len == pattern.len() || !self.occurs(&pattern[i..i + len + 1]);
                let left = i == 0 || !self.occurs(&pattern[i - 1..i + len]);
                if right && left {
                    out.insert((i, len));
                }
            }
        }
        out
    }

    /// Checks per-run thresholds against the run gaps of the sorted suffixes.
    ///
    /// `entries[x]` describes run `x` of the BWT and must be `None` exactly for
    /// the first run of each symbol. For every row `k` strictly between `e1`
    /// and `s2`, rows above the threshold must share at least as much with
    /// `e1` as with `s2`, and rows from the threshold on the reverse. Stored
    /// LCE values must equal the scanned ones where a side can be consulted.
    /// Returns the number of gaps checked.
    pub fn check_thresholds(&self, entries: &[Option<AugmentedThreshold>]) -> Result<usize, ThresholdViolation> {
        assert!(
            self.text.len() <= MAX_THRESHOLD_TEXT,
            "threshold check limited to {MAX_THRESHOLD_TEXT} bytes"
        );
        let runs = self.runs();
        let fail = |run, row, reason: String| Err(ThresholdViolation { run, row, reason });
        if entries.len() != runs.len() {
            return fail(0, None, format!("{} entries for {} runs", entries.len(), runs.len()));
        }
        let mut prev_end: [Option<usize>; 256] = [None; 256];
        let mut gaps = 0;
        for (x, (&(c, start, end), entry)) in runs.iter().zip(entries).enumerate() {
            let slot = std::mem::replace(&mut prev_end[c as usize], Some(end));
            let (e1, a) = match (slot, entry) {
                (None, None) => continue,
                (None, Some(_)) => return fail(x, None, "threshold on the first run of its symbol".into()),
                (Some(_), None) => return fail(x, None, "missing threshold".into()),
                (Some(e1), Some(a)) => (e1, a),
            };
            gaps += 1;
            if a.e1 != e1 || a.s2 != start {
                return fail(x, None, format!("gap ({}, {}) expected ({e1}, {start})", a.e1, a.s2));
            }
            let t = a.threshold;
            if t <= e1 || t > start {
                return fail(x, None, format!("threshold {t} outside ({e1}, {start}]"));
            }
            let (top, bottom) = (self.sa[e1], self.sa[start]);
            for k in e1 + 1..start {
                let up = self.lce(top, self.sa[k]);
                let down = self.lce(self.sa[k], bottom);
                if k < t && up < down {
                    return fail(x, Some(k), format!("above threshold but lce with e1 {up} < lce with s2 {down}"));
                }
                if k >= t && down < up {
                    return fail(x, Some(k), format!("from threshold on but lce with s2 {down} < lce with e1 {up}"));
                }
            }
            let want_e = (t > e1 + 1).then(|| self.lce(top, self.sa[t - 1]));
            let want_s = (t < start).then(|| self.lce(self.sa[t], bottom));
            if a.lce_e != want_e {
                return fail(x, Some(t), format!("lce_e {:?} expected {want_e:?}", a.lce_e));
            }
            if a.lce_s != want_s {
                return fail(x, Some(t), format!("lce_s {:?} expected {want_s:?}", a.lce_s));
            }
        }
        Ok(gaps)
    }
}

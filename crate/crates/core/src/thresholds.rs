//! Thresholds between consecutive runs of the same symbol, built together
//! with the two threshold LCEs that let a query skip its LCE call.
//!
//! For a run `x` whose symbol also heads an earlier run ending at `e1`, with
//! `s2` the start of `x`, the threshold `t` is a position of the minimum of
//! `lcp[e1 + 1..=s2]`. Then
//!
//! * `lce_e = LCE(sa[e1], sa[t - 1]) = min(lcp[e1 + 1..=t - 1])`, unused when `t = e1 + 1`;
//! * `lce_s = LCE(sa[t], sa[s2]) = min(lcp[t + 1..=s2])`, unused when `t = s2`.

use std::fmt;
use std::str::FromStr;

use crate::bits::{EliasFano, PackedInts};
use crate::codec::{ByteReader, ByteWriter};
use crate::error::{Error, Result};
use crate::rlbwt::Rlbwt;
use crate::suffix::SuffixBundle;

/// Which LCP minimum becomes the threshold when several positions tie.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    Leftmost,
    Rightmost,
}

impl FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leftmost" => Ok(TieBreak::Leftmost),
            "rightmost" => Ok(TieBreak::Rightmost),
            _ => Err(Error::UnknownTieBreak(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LceSide {
    /// `LCE(sa[e1], sa[t - 1])`, consulted on a jump up.
    E,
    /// `LCE(sa[t], sa[s2])`, consulted on a jump down.
    S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AugmentedThreshold {
    pub e1: usize,
    pub threshold: usize,
    pub s2: usize,
    /// `None` when the side can never be consulted.
    pub lce_e: Option<usize>,
    pub lce_s: Option<usize>,
}

/// Per-run augmented thresholds before any encoding; `None` for the first
/// run of each symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawThresholds {
    entries: Vec<Option<AugmentedThreshold>>,
}

impl RawThresholds {
    pub fn build(bundle: &SuffixBundle, rlbwt: &Rlbwt, tie: TieBreak) -> Result<Self> {
        if bundle.len() != rlbwt.len() || bundle.bwt != rlbwt.to_bwt() {
            return Err(Error::MismatchedInputs);
        }
        let rmq = bundle.lcp_rmq();
        let mut last_end: [Option<usize>; 256] = [None; 256];
        let mut entries = Vec::with_capacity(rlbwt.runs());
        for run in rlbwt.iter_runs() {
            let slot = &mut last_end[run.head as usize];
            entries.push(slot.map(|e1| {
                let s2 = run.start;
                let mut t = rmq.argmin(e1 + 1, s2);
                if tie == TieBreak::Rightmost {
                    let m = rmq.values()[t];
                    while t < s2 {
                        let p = rmq.argmin(t + 1, s2);
                        if rmq.values()[p] != m {
                            break;
                        }
                        t = p;
                    }
                }
                AugmentedThreshold {
                    e1,
                    threshold: t,
                    s2,
                    lce_e: (t > e1 + 1).then(|| rmq.min_value(e1 + 1, t - 1)),
                    lce_s: (t < s2).then(|| rmq.min_value(t + 1, s2)),
                }
            }));
            *slot = Some(run.end);
        }
        Ok(RawThresholds { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, x: usize) -> Option<&AugmentedThreshold> {
        self.entries.get(x).and_then(Option::as_ref)
    }

    pub fn entries(&self) -> &[Option<AugmentedThreshold>] {
        &self.entries
    }

    /// The per-side columns fed to an encoding.
    pub fn column(&self, side: LceSide) -> Vec<Option<usize>> {
        self.entries
            .iter()
            .map(|e| {
                e.and_then(|a| match side {
                    LceSide::E => a.lce_e,
                    LceSide::S => a.lce_s,
                })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThresholdStorage {
    /// One packed integer per run; 0 marks the first run of a symbol.
    #[default]
    Array,
    /// One Elias-Fano sequence per symbol over its increasing thresholds.
    SigmaBv,
}

impl ThresholdStorage {
    pub fn name(self) -> &'static str {
        match self {
            ThresholdStorage::Array => "array",
            ThresholdStorage::SigmaBv => "sigma-bv",
        }
    }

    pub(crate) fn tag(self) -> u8 {
        match self {
            ThresholdStorage::Array => 0,
            ThresholdStorage::SigmaBv => 1,
        }
    }

    pub(crate) fn from_tag(tag: u8) -> Result<Self> {
        match tag {
            0 => Ok(ThresholdStorage::Array),
            1 => Ok(ThresholdStorage::SigmaBv),
            _ => Err(Error::UnsupportedStorage(tag)),
        }
    }
}

impl FromStr for ThresholdStorage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "array" => Ok(ThresholdStorage::Array),
            "sigma-bv" => Ok(ThresholdStorage::SigmaBv),
            _ => Err(Error::UnknownStorage(s.to_string())),
        }
    }
}

impl fmt::Display for ThresholdStorage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThresholdTable {
    Array(PackedInts),
    SigmaBv(Vec<(u8, EliasFano)>),
}

impl ThresholdTable {
    pub fn new(raw: &RawThresholds, rlbwt: &Rlbwt, storage: ThresholdStorage) -> Self {
        let n = rlbwt.len();
        match storage {
            ThresholdStorage::Array => {
                let values: Vec<usize> = raw
                    .entries
                    .iter()
                    .map(|e| e.map_or(0, |a| a.threshold))
                    .collect();
                ThresholdTable::Array(PackedInts::new(&values, n))
            }
            ThresholdStorage::SigmaBv => {
                let mut per_symbol: Vec<Vec<usize>> = vec![Vec::new(); 256];
                let mut present = [false; 256];
                for (x, e) in raw.entries.iter().enumerate() {
                    let c = rlbwt.head(x) as usize;
                    present[c] = true;
                    if let Some(a) = e {
                        per_symbol[c].push(a.threshold);
                    }
                }
                let table = (0..256)
                    .filter(|&c| present[c])
                    .map(|c| (c as u8, EliasFano::new(&per_symbol[c], n)))
                    .collect();
                ThresholdTable::SigmaBv(table)
            }
        }
    }

    pub fn storage(&self) -> ThresholdStorage {
        match self {
            ThresholdTable::Array(_) => ThresholdStorage::Array,
            ThresholdTable::SigmaBv(_) => ThresholdStorage::SigmaBv,
        }
    }

    /// Threshold of run `x`, or `None` for the first run of its symbol.
    #[inline]
    pub fn get(&self, rlbwt: &Rlbwt, x: usize) -> Option<usize> {
        match self {
            ThresholdTable::Array(values) => Some(values.get(x)).filter(|&t| t != 0),
            ThresholdTable::SigmaBv(table) => {
                let k = rlbwt.ordinal_in_symbol(x).checked_sub(1)?;
                let c = rlbwt.head(x);
                let at = table.binary_search_by_key(&c, |(s, _)| *s).ok()?;
                Some(table[at].1.get(k))
            }
        }
    }

    pub(crate) fn write(&self, out: &mut ByteWriter) {
        match self {
            ThresholdTable::Array(values) => values.write(out),
            ThresholdTable::SigmaBv(table) => {
                out.u16_count(table.len());
                for (c, ef) in table {
                    out.u8(*c);
                    ef.write(out);
                }
            }
        }
    }

    pub(crate) fn read(r: &mut ByteReader, storage: ThresholdStorage, rlbwt: &Rlbwt) -> Result<Self> {
        let table = match storage {
            ThresholdStorage::Array => {
                let values = PackedInts::read(r)?;
                if values.len() != rlbwt.runs() || values.iter().any(|t| t >= rlbwt.len()) {
                    return Err(Error::Malformed("threshold array".into()));
                }
                ThresholdTable::Array(values)
            }
            ThresholdStorage::SigmaBv => {
                let k = r.u16_count()?;
                let mut table = Vec::with_capacity(k);
                for _ in 0..k {
                    let c = r.u8()?;
                    let ef = EliasFano::read(r)?;
                    if rlbwt.count(c) == 0
                        || table.last().is_some_and(|(p, _): &(u8, _)| *p >= c)
                        || ef.len() + 1 != rlbwt.runs_of(c)
                        || (0..ef.len()).any(|i| ef.get(i) >= rlbwt.len())
                    {
                        return Err(Error::Malformed("threshold symbols".into()));
                    }
                    table.push((c, ef));
                }
                if table.len() != (0..=255u8).filter(|&c| rlbwt.count(c) > 0).count() {
                    return Err(Error::Malformed("threshold symbols".into()));
                }
                ThresholdTable::SigmaBv(table)
            }
        };
        r.finish()?;
        Ok(table)
    }
}

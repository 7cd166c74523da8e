//! Longest-common-extension queries between text positions.

use std::fmt;
use std::str::FromStr;

use crate::bits::PackedInts;
use crate::codec::{ByteReader, ByteWriter};
use crate::error::{Error, Result};
use crate::matcher::QueryStats;
use crate::rmq::RangeMin;
use crate::suffix::SuffixBundle;
use crate::text::Text;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LceBackendKind {
    /// Keeps the text and compares symbols directly.
    #[default]
    Naive,
    /// Keeps the inverse suffix array and a range-minimum structure over LCP.
    LcpRmq,
}

impl LceBackendKind {
    pub const ALL: [LceBackendKind; 2] = [LceBackendKind::Naive, LceBackendKind::LcpRmq];

    pub fn name(self) -> &'static str {
        match self {
            LceBackendKind::Naive => "naive",
            LceBackendKind::LcpRmq => "lcp-rmq",
        }
    }

    pub(crate) fn tag(self) -> u8 {
        match self {
            LceBackendKind::Naive => 0,
            LceBackendKind::LcpRmq => 1,
        }
    }

    pub(crate) fn from_tag(tag: u8) -> Result<Self> {
        match tag {
            0 => Ok(LceBackendKind::Naive),
            1 => Ok(LceBackendKind::LcpRmq),
            _ => Err(Error::UnsupportedBackend(tag)),
        }
    }
}

impl FromStr for LceBackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownBackend(s.to_string()))
    }
}

impl fmt::Display for LceBackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub enum LceBackend {
    Naive { text: Vec<u8> },
    LcpRmq { isa: Vec<usize>, lcp: RangeMin },
}

impl LceBackend {
    pub fn naive(text: &Text) -> Self {
        LceBackend::Naive {
            text: text.as_bytes().to_vec(),
        }
    }

    pub fn lcp_rmq(bundle: &SuffixBundle) -> Self {
        LceBackend::LcpRmq {
            isa: bundle.isa.clone(),
            lcp: bundle.lcp_rmq().clone(),
        }
    }

    pub(crate) fn from_bundle_owned(bundle: SuffixBundle) -> Self {
        let (isa, lcp) = bundle.into_parts();
        LceBackend::LcpRmq { isa, lcp }
    }

    pub fn kind(&self) -> LceBackendKind {
        match self {
            LceBackend::Naive { .. } => LceBackendKind::Naive,
            LceBackend::LcpRmq { .. } => LceBackendKind::LcpRmq,
        }
    }

    /// Text length `n`.
    pub fn len(&self) -> usize {
        match self {
            LceBackend::Naive { text } => text.len(),
            LceBackend::LcpRmq { isa, .. } => isa.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Length of the longest common prefix of the suffixes at `i` and `j`,
    /// counted in `stats.lce_calls`.
    pub fn lce(&self, i: usize, j: usize, stats: &mut QueryStats) -> Result<usize> {
        let n = self.len();
        for pos in [i, j] {
            if pos >= n {
                return Err(Error::OutOfRange { pos, len: n });
            }
        }
        stats.lce_calls += 1;
        Ok(self.lce_uncounted(i, j))
    }

    #[inline]
    pub(crate) fn lce_uncounted(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.len() - i;
        }
        match self {
            LceBackend::Naive { text } => text[i..]
                .iter()
                .zip(&text[j..])
                .take_while(|(a, b)| a == b)
                .count(),
            LceBackend::LcpRmq { isa, lcp } => {
                let (a, b) = (isa[i].min(isa[j]), isa[i].max(isa[j]));
                lcp.min_value(a + 1, b)
            }
        }
    }

    pub(crate) fn write(&self, out: &mut ByteWriter) {
        match self {
            LceBackend::Naive { text } => {
                out.u64(text.len() as u64);
                out.bytes(text);
            }
            LceBackend::LcpRmq { isa, lcp } => {
                PackedInts::new(isa, 0).write(out);
                PackedInts::new(lcp.values(), 0).write(out);
            }
        }
    }

    pub(crate) fn read(r: &mut ByteReader, kind: LceBackendKind, n: usize) -> Result<Self> {
        let backend = match kind {
            LceBackendKind::Naive => {
                let len = r.len()?;
                let text = r.bytes(len)?.to_vec();
                LceBackend::Naive { text }
            }
            LceBackendKind::LcpRmq => {
                let isa: Vec<usize> = PackedInts::read(r)?.iter().collect();
                let lcp: Vec<usize> = PackedInts::read(r)?.iter().collect();
                let mut seen = vec![false; isa.len()];
                for &k in &isa {
                    if k >= isa.len() || std::mem::replace(&mut seen[k], true) {
                        return Err(Error::Malformed("inverse suffix array is not a permutation".into()));
                    }
                }
                if lcp.len() != isa.len() || lcp.iter().any(|&l| l >= n) {
                    return Err(Error::Malformed("lcp array".into()));
                }
                LceBackend::LcpRmq {
                    isa,
                    lcp: RangeMin::new(lcp),
                }
            }
        };
        r.finish()?;
        if backend.len() != n {
            return Err(Error::Malformed("LCE backend length".into()));
        }
        Ok(backend)
    }
}

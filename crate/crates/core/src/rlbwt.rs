//! Run-length BWT with rank/select, LF and SA samples at run boundaries.

use crate::bits::PackedInts;
use crate::codec::{ByteReader, ByteWriter};
use crate::error::{Error, Result};
use crate::suffix::SuffixBundle;

/// One maximal run `bwt[start..=end]` of `head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub index: usize,
    pub head: u8,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunSide {
    Start,
    End,
}

#[derive(Clone, Debug, Default)]
struct SymbolRuns {
    runs: Vec<usize>,
    // occurrences of the symbol before each of its runs, plus the total
    before: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Rlbwt {
    n: usize,
    heads: Vec<u8>,
    starts: PackedInts,
    sa_start: PackedInts,
    sa_end: PackedInts,
    // derived on construction and load
    smaller: [usize; 256],
    per_symbol: Vec<SymbolRuns>,
    ordinal: Vec<usize>,
}

impl PartialEq for Rlbwt {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.heads == other.heads
            && self.starts == other.starts
            && self.sa_start == other.sa_start
            && self.sa_end == other.sa_end
    }
}

impl Rlbwt {
    pub fn from_bundle(bundle: &SuffixBundle) -> Self {
        let bwt = &bundle.bwt;
        let n = bwt.len();
        let mut heads = Vec::new();
        let mut starts = Vec::new();
        let mut sa_start = Vec::new();
        let mut sa_end = Vec::new();
        for j in 0..n {
            if j == 0 || bwt[j] != bwt[j - 1] {
                heads.push(bwt[j]);
                starts.push(j);
                sa_start.push(bundle.sa[j]);
            }
            if j + 1 == n || bwt[j] != bwt[j + 1] {
                sa_end.push(bundle.sa[j]);
            }
        }
        Self::assemble(
            n,
            heads,
            PackedInts::new(&starts, n),
            PackedInts::new(&sa_start, n),
            PackedInts::new(&sa_end, n),
        )
    }

    fn assemble(
        n: usize,
        heads: Vec<u8>,
        starts: PackedInts,
        sa_start: PackedInts,
        sa_end: PackedInts,
    ) -> Self {
        let mut per_symbol = vec![SymbolRuns::default(); 256];
        let mut ordinal = Vec::with_capacity(heads.len());
        let mut counts = [0usize; 256];
        for (x, &c) in heads.iter().enumerate() {
            let sr = &mut per_symbol[c as usize];
            ordinal.push(sr.runs.len());
            sr.runs.push(x);
            sr.before.push(counts[c as usize]);
            let start = starts.get(x);
            let end = if x + 1 < heads.len() { starts.get(x + 1) } else { n };
            counts[c as usize] += end - start;
        }
        for (c, sr) in per_symbol.iter_mut().enumerate() {
            sr.before.push(counts[c]);
        }
        let mut smaller = [0usize; 256];
        let mut acc = 0;
        for c in 0..256 {
            smaller[c] = acc;
            acc += counts[c];
        }
        Rlbwt {
            n,
            heads,
            starts,
            sa_start,
            sa_end,
            smaller,
            per_symbol,
            ordinal,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of runs `r`.
    pub fn runs(&self) -> usize {
        self.heads.len()
    }

    pub fn run(&self, x: usize) -> Run {
        Run {
            index: x,
            head: self.heads[x],
            start: self.starts.get(x),
            end: self.run_end(x),
        }
    }

    pub fn iter_runs(&self) -> impl Iterator<Item = Run> + '_ {
        (0..self.runs()).map(|x| self.run(x))
    }

    #[inline]
    pub fn head(&self, x: usize) -> u8 {
        self.heads[x]
    }

    #[inline]
    pub fn run_start(&self, x: usize) -> usize {
        self.starts.get(x)
    }

    #[inline]
    pub fn run_end(&self, x: usize) -> usize {
        if x + 1 < self.heads.len() {
            self.starts.get(x + 1) - 1
        } else {
            self.n - 1
        }
    }

    /// Position of run `x` among the runs of its own head symbol.
    #[inline]
    pub fn ordinal_in_symbol(&self, x: usize) -> usize {
        self.ordinal[x]
    }

    /// Total occurrences of `c`.
    pub fn count(&self, c: u8) -> usize {
        *self.per_symbol[c as usize].before.last().unwrap()
    }

    /// Number of runs headed by `c`.
    pub fn runs_of(&self, c: u8) -> usize {
        self.per_symbol[c as usize].runs.len()
    }

    /// `C[c]`: occurrences of symbols smaller than `c`.
    pub fn smaller(&self, c: u8) -> usize {
        self.smaller[c as usize]
    }

    #[inline]
    pub(crate) fn run_at(&self, j: usize) -> usize {
        self.starts.partition_point(|s| s <= j) - 1
    }

    pub fn run_of_position(&self, j: usize) -> Result<usize> {
        self.check(j)?;
        Ok(self.run_at(j))
    }

    pub fn access(&self, j: usize) -> Result<u8> {
        self.check(j)?;
        Ok(self.heads[self.run_at(j)])
    }

    /// Occurrences of `c` strictly before position `j` (`j <= n`).
    pub fn rank(&self, c: u8, j: usize) -> Result<usize> {
        if j > self.n {
            return Err(Error::OutOfRange { pos: j, len: self.n });
        }
        let sr = &self.per_symbol[c as usize];
        let k = sr.runs.partition_point(|&x| self.starts.get(x) < j);
        if k == 0 {
            return Ok(0);
        }
        let x = sr.runs[k - 1];
        let start = self.starts.get(x);
        let len = self.run_end(x) + 1 - start;
        Ok(sr.before[k - 1] + (j - start).min(len))
    }

    /// Position of the `i`-th occurrence of `c`, counting from one.
    pub fn select(&self, c: u8, i: usize) -> Option<usize> {
        let sr = &self.per_symbol[c as usize];
        if i == 0 || i > *sr.before.last().unwrap() {
            return None;
        }
        let k = sr.before.partition_point(|&b| b < i) - 1;
        Some(self.starts.get(sr.runs[k]) + (i - 1 - sr.before[k]))
    }

    /// Runs of `c` immediately before and after position `j`, where
    /// `bwt[j] != c`.
    pub(crate) fn neighbour_runs(&self, c: u8, j: usize) -> (Option<usize>, Option<usize>) {
        let sr = &self.per_symbol[c as usize];
        let k = sr.runs.partition_point(|&x| self.starts.get(x) < j);
        (
            k.checked_sub(1).map(|k| sr.runs[k]),
            sr.runs.get(k).copied(),
        )
    }

    /// First run of `c`, if `c` occurs.
    pub(crate) fn first_run(&self, c: u8) -> Option<usize> {
        self.per_symbol[c as usize].runs.first().copied()
    }

    #[inline]
    pub(crate) fn lf_at(&self, j: usize, x: usize) -> usize {
        let c = self.heads[x];
        self.smaller[c as usize] + self.per_symbol[c as usize].before[self.ordinal[x]] + (j - self.starts.get(x))
    }

    /// LF-mapping: the row of the suffix starting one text position earlier.
    pub fn lf(&self, j: usize) -> Result<usize> {
        self.check(j)?;
        Ok(self.lf_at(j, self.run_at(j)))
    }

    #[inline]
    pub(crate) fn sample(&self, x: usize, side: RunSide) -> usize {
        match side {
            RunSide::Start => self.sa_start.get(x),
            RunSide::End => self.sa_end.get(x),
        }
    }

    pub fn sa_sample(&self, x: usize, side: RunSide) -> Result<usize> {
        if x >= self.runs() {
            return Err(Error::OutOfRange {
                pos: x,
                len: self.runs(),
            });
        }
        Ok(self.sample(x, side))
    }

    /// Uncompressed BWT.
    pub fn to_bwt(&self) -> Vec<u8> {
        self.iter_runs()
            .flat_map(|run| std::iter::repeat_n(run.head, run.end + 1 - run.start))
            .collect()
    }

    fn check(&self, j: usize) -> Result<()> {
        if j >= self.n {
            return Err(Error::OutOfRange { pos: j, len: self.n });
        }
        Ok(())
    }

    pub(crate) fn write_runs(&self, out: &mut ByteWriter) {
        out.u64(self.n as u64);
        out.u64(self.heads.len() as u64);
        out.bytes(&self.heads);
        self.starts.write(out);
    }

    pub(crate) fn write_samples(&self, out: &mut ByteWriter) {
        self.sa_start.write(out);
        self.sa_end.write(out);
    }

    pub(crate) fn read(runs: &mut ByteReader, samples: &mut ByteReader) -> Result<Self> {
        let n = runs.len()?;
        let r = runs.len()?;
        let heads = runs.bytes(r)?.to_vec();
        let starts = PackedInts::read(runs)?;
        runs.finish()?;
        let sa_start = PackedInts::read(samples)?;
        let sa_end = PackedInts::read(samples)?;
        samples.finish()?;
        let bad = |what: &str| Err(Error::Malformed(format!("run table: {what}")));
        if r == 0 || starts.len() != r || sa_start.len() != r || sa_end.len() != r {
            return bad("section lengths");
        }
        if starts.get(0) != 0 || (1..r).any(|x| starts.get(x) <= starts.get(x - 1)) {
            return bad("run starts not increasing");
        }
        if starts.get(r - 1) >= n || (1..r).any(|x| heads[x] == heads[x - 1]) {
            return bad("runs not maximal");
        }
        if sa_start.iter().chain(sa_end.iter()).any(|v| v >= n) {
            return bad("sample out of range");
        }
        Ok(Self::assemble(n, heads, starts, sa_start, sa_end))
    }
}

//! Suffix array (SA-IS), inverse suffix array, BWT and LCP (Kasai et al.).
//!
//! All positions and ranks are 0-based. `lcp[0] = 0` and for `k >= 1`,
//! `lcp[k]` is the longest common prefix of the suffixes at `sa[k - 1]` and
//! `sa[k]`. `bwt[k]` is the symbol preceding suffix `sa[k]`, wrapping to the
//! sentinel for the suffix starting at 0.

use crate::error::Result;
use crate::rmq::RangeMin;
use crate::text::Text;

/// Construction-time suffix structures. Not persisted with the index.
#[derive(Clone, Debug)]
pub struct SuffixBundle {
    pub sa: Vec<usize>,
    pub isa: Vec<usize>,
    pub bwt: Vec<u8>,
    lcp: RangeMin,
}

impl SuffixBundle {
    pub fn build(text: &Text) -> Self {
        let t = text.as_bytes();
        let n = t.len();
        // dense ranks with the sentinel as 0
        let mut rank_of = [0usize; 256];
        for (k, &c) in text.alphabet().iter().enumerate() {
            rank_of[c as usize] = k + 1;
        }
        let s: Vec<usize> = t.iter().map(|&c| rank_of[c as usize]).collect();
        let sa = sais(&s, text.sigma() + 1);
        let mut isa = vec![0; n];
        for (k, &p) in sa.iter().enumerate() {
            isa[p] = k;
        }
        let bwt = sa.iter().map(|&p| t[(p + n - 1) % n]).collect();
        let lcp = kasai(t, &sa, &isa);
        SuffixBundle {
            sa,
            isa,
            bwt,
            lcp: RangeMin::new(lcp),
        }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    pub fn lcp(&self) -> &[usize] {
        self.lcp.values()
    }

    pub fn lcp_rmq(&self) -> &RangeMin {
        &self.lcp
    }

    /// Leftmost minimum of `lcp[lo..=hi]` as `(position, value)`.
    pub fn lcp_range_min(&self, lo: usize, hi: usize) -> Result<(usize, usize)> {
        self.lcp.query(lo, hi)
    }

    pub(crate) fn into_parts(self) -> (Vec<usize>, RangeMin) {
        (self.isa, self.lcp)
    }
}

fn kasai(t: &[u8], sa: &[usize], isa: &[usize]) -> Vec<usize> {
    let n = t.len();
    let mut lcp = vec![0; n];
    let mut h = 0usize;
    for i in 0..n {
        let k = isa[i];
        if k == 0 {
            h = 0;
            continue;
        }
        let j = sa[k - 1];
        while i + h < n && j + h < n && t[i + h] == t[j + h] {
            h += 1;
        }
        lcp[k] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

const EMPTY: usize = usize::MAX;

/// SA-IS over `s`, whose last symbol must be a unique minimum `0`. Symbols
/// lie in `0..k`.
fn sais(s: &[usize], k: usize) -> Vec<usize> {
    let n = s.len();
    debug_assert!(n > 0 && s[n - 1] == 0);
    if n == 1 {
        return vec![0];
    }
    // true = S-type
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];

    let mut counts = vec![0usize; k];
    for &c in s {
        counts[c] += 1;
    }
    let heads = || {
        let mut acc = 0;
        counts
            .iter()
            .map(|&c| {
                acc += c;
                acc - c
            })
            .collect::<Vec<_>>()
    };
    let tails = || {
        let mut acc = 0;
        counts
            .iter()
            .map(|&c| {
                acc += c;
                acc
            })
            .collect::<Vec<_>>()
    };
    let induce = |sa: &mut [usize]| {
        let mut h = heads();
        for i in 0..n {
            let j = sa[i];
            if j != EMPTY && j > 0 && !stype[j - 1] {
                let c = s[j - 1];
                sa[h[c]] = j - 1;
                h[c] += 1;
            }
        }
        let mut t = tails();
        for i in (0..n).rev() {
            let j = sa[i];
            if j != EMPTY && j > 0 && stype[j - 1] {
                let c = s[j - 1];
                t[c] -= 1;
                sa[t[c]] = j - 1;
            }
        }
    };

    let lms: Vec<usize> = (1..n).filter(|&i| is_lms(i)).collect();

    let mut sa = vec![EMPTY; n];
    let mut t = tails();
    for &p in &lms {
        t[s[p]] -= 1;
        sa[t[s[p]]] = p;
    }
    induce(&mut sa);

    // name the sorted LMS substrings
    let lms_equal = |a: usize, b: usize| {
        if a == n - 1 || b == n - 1 {
            return a == b;
        }
        let mut d = 0;
        loop {
            let (x, y) = (a + d, b + d);
            if s[x] != s[y] || stype[x] != stype[y] {
                return false;
            }
            if d > 0 && (is_lms(x) || is_lms(y)) {
                return is_lms(x) && is_lms(y);
            }
            d += 1;
        }
    };
    let mut names = vec![EMPTY; n];
    let mut name = 0;
    let mut prev = EMPTY;
    for &p in sa.iter().filter(|&&p| is_lms(p)) {
        if prev != EMPTY && !lms_equal(prev, p) {
            name += 1;
        }
        names[p] = name;
        prev = p;
    }
    let reduced: Vec<usize> = lms.iter().map(|&p| names[p]).collect();
    let reduced_sa = if name + 1 == reduced.len() {
        let mut rs = vec![0; reduced.len()];
        for (i, &r) in reduced.iter().enumerate() {
            rs[r] = i;
        }
        rs
    } else {
        sais(&reduced, name + 1)
    };

    sa.fill(EMPTY);
    let mut t = tails();
    for &r in reduced_sa.iter().rev() {
        let p = lms[r];
        t[s[p]] -= 1;
        sa[t[s[p]]] = p;
    }
    induce(&mut sa);
    sa
}

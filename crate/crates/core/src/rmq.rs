//! Range-minimum queries in constant time and linear space.
//!
//! Positions are grouped in blocks of 64. Inside a block, each position keeps
//! a 64-bit mask of the monotone stack left after scanning up to it, so the
//! minimum of `[l, r]` within one block is the lowest stack entry at or after
//! `l`. Block minima are covered by a sparse table.

use crate::error::{Error, Result};

const BLOCK: usize = 64;

#[derive(Clone, Debug)]
pub struct RangeMin {
    values: Vec<usize>,
    masks: Vec<u64>,
    // sparse[k][b]: position of the leftmost minimum over blocks b..b + 2^k
    sparse: Vec<Vec<usize>>,
}

impl RangeMin {
    pub fn new(values: Vec<usize>) -> Self {
        let n = values.len();
        let mut masks = vec![0u64; n];
        for base in (0..n).step_by(BLOCK) {
            let mut stack = 0u64;
            for p in base..n.min(base + BLOCK) {
                while stack != 0 {
                    let top = base + 63 - stack.leading_zeros() as usize;
                    if values[top] > values[p] {
                        stack &= !(1u64 << (top - base));
                    } else {
                        break;
                    }
                }
                stack |= 1u64 << (p - base);
                masks[p] = stack;
            }
        }
        let mut rm = RangeMin {
            values,
            masks,
            sparse: Vec::new(),
        };
        let blocks = n.div_ceil(BLOCK);
        let mut level: Vec<usize> = (0..blocks)
            .map(|b| rm.in_block(b * BLOCK, ((b + 1) * BLOCK).min(n) - 1))
            .collect();
        let mut width = 1;
        while 2 * width <= blocks {
            let next = (0..blocks + 1 - 2 * width)
                .map(|b| rm.pick(level[b], level[b + width]))
                .collect();
            rm.sparse.push(std::mem::replace(&mut level, next));
            width *= 2;
        }
        rm.sparse.push(level);
        rm
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Leftmost position of the minimum in `lo..=hi` and its value.
    pub fn query(&self, lo: usize, hi: usize) -> Result<(usize, usize)> {
        if lo > hi || hi >= self.values.len() {
            return Err(Error::InvalidRange {
                lo,
                hi,
                len: self.values.len(),
            });
        }
        let p = self.argmin(lo, hi);
        Ok((p, self.values[p]))
    }

    /// Unchecked form of [`RangeMin::query`] returning the position only.
    #[inline]
    pub fn argmin(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi && hi < self.values.len());
        let (bl, br) = (lo / BLOCK, hi / BLOCK);
        if bl == br {
            return self.in_block(lo, hi);
        }
        let mut best = self.in_block(lo, bl * BLOCK + BLOCK - 1);
        if br > bl + 1 {
            best = self.pick(best, self.blocks_min(bl + 1, br - 1));
        }
        self.pick(best, self.in_block(br * BLOCK, hi))
    }

    #[inline]
    pub fn min_value(&self, lo: usize, hi: usize) -> usize {
        self.values[self.argmin(lo, hi)]
    }

    #[inline]
    fn in_block(&self, lo: usize, hi: usize) -> usize {
        let base = lo - lo % BLOCK;
        let m = self.masks[hi] & (u64::MAX << (lo - base));
        base + m.trailing_zeros() as usize
    }

    fn blocks_min(&self, bl: usize, br: usize) -> usize {
        let k = (usize::BITS - 1 - (br - bl + 1).leading_zeros()) as usize;
        let row = &self.sparse[k];
        self.pick(row[bl], row[br + 1 - (1 << k)])
    }

    // leftmost of two candidate minima
    #[inline]
    fn pick(&self, a: usize, b: usize) -> usize {
        let (va, vb) = (self.values[a], self.values[b]);
        if va < vb || (va == vb && a < b) {
            a
        } else {
            b
        }
    }
}

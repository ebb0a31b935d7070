//! Range-distinct queries over the run heads `L'[0..r)`.
//!
//! For a run range `[pk..=qk]` we report every distinct head together with
//! its leftmost and rightmost run in the range. Leftmost runs are those whose
//! previous same-symbol run lies before `pk`; they are found by recursive
//! range-minimum descent on `prev`. Rightmost runs are found symmetrically on
//! `next`. Work is linear in the output size.

use crate::rlbwt::Rlbwt;
use crate::text::Symbol;

const BLOCK: usize = 32;

/// Range-minimum over `u32` keys in `O(m)` words: in-block scans plus a
/// sparse table over block minima.
#[derive(Clone, Debug)]
struct RangeMin {
    keys: Vec<u32>,
    /// `table[j][b]`: argmin over blocks `b..b + 2^j`.
    table: Vec<Vec<u32>>,
}

impl RangeMin {
    fn new(keys: Vec<u32>) -> RangeMin {
        let nb = keys.len().div_ceil(BLOCK);
        let mut level: Vec<u32> = (0..nb)
            .map(|b| {
                let lo = b * BLOCK;
                let hi = (lo + BLOCK).min(keys.len());
                Self::scan(&keys, lo, hi - 1) as u32
            })
            .collect();
        let mut table = Vec::new();
        let mut width = 1;
        while !level.is_empty() {
            let next: Vec<u32> = (0..level.len().saturating_sub(width))
                .map(|b| Self::better(&keys, level[b], level[b + width]))
                .collect();
            table.push(level);
            level = next;
            width *= 2;
        }
        RangeMin { keys, table }
    }

    fn better(keys: &[u32], a: u32, b: u32) -> u32 {
        if keys[b as usize] < keys[a as usize] {
            b
        } else {
            a
        }
    }

    fn scan(keys: &[u32], lo: usize, hi: usize) -> usize {
        let mut best = lo;
        for i in lo + 1..=hi {
            if keys[i] < keys[best] {
                best = i;
            }
        }
        best
    }

    /// Position of a minimum key in `[lo..=hi]`.
    fn argmin(&self, lo: usize, hi: usize) -> usize {
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bh <= bl + 1 {
            return Self::scan(&self.keys, lo, hi);
        }
        let mut best = Self::scan(&self.keys, lo, (bl + 1) * BLOCK - 1) as u32;
        let tail = Self::scan(&self.keys, bh * BLOCK, hi) as u32;
        best = Self::better(&self.keys, best, tail);
        let (from, to) = (bl + 1, bh - 1);
        let j = usize::BITS as usize - 1 - (to - from + 1).leading_zeros() as usize;
        let a = self.table[j][from];
        let b = self.table[j][to + 1 - (1 << j)];
        best = Self::better(&self.keys, best, a);
        Self::better(&self.keys, best, b) as usize
    }
}

/// One distinct head in a queried run range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distinct {
    pub symbol: Symbol,
    /// Leftmost run in the range with this head.
    pub first: usize,
    /// Rightmost run in the range with this head.
    pub last: usize,
}

#[derive(Clone, Debug)]
pub struct RdIndex {
    heads: Vec<Symbol>,
    /// 1-based previous run with the same head, 0 if none.
    prev: Vec<u32>,
    /// 1-based next run with the same head, `r + 1` if none.
    next: Vec<u32>,
    prev_min: RangeMin,
    next_max: RangeMin,
}

/// Caller-owned scratch: a null-initialized slot per symbol plus a work stack.
#[derive(Clone, Debug)]
pub struct RdScratch {
    slot: Vec<u32>,
    stack: Vec<(usize, usize)>,
    /// Structure probes since the last reset.
    pub probes: usize,
}

impl RdScratch {
    pub fn new(sigma: u32) -> RdScratch {
        RdScratch {
            slot: vec![0; sigma as usize + 1],
            stack: Vec::new(),
            probes: 0,
        }
    }
}

impl RdIndex {
    pub fn build(rl: &Rlbwt) -> RdIndex {
        Self::from_heads(rl.heads(), rl.sigma())
    }

    pub fn from_heads(heads: &[Symbol], sigma: u32) -> RdIndex {
        let r = heads.len();
        assert!(r < u32::MAX as usize - 1, "too many runs");
        let mut last = vec![0u32; sigma as usize + 1];
        let mut prev = vec![0u32; r];
        for (k, &c) in heads.iter().enumerate() {
            prev[k] = last[c as usize];
            last[c as usize] = k as u32 + 1;
        }
        let mut next = vec![r as u32 + 1; r];
        last.iter_mut().for_each(|v| *v = r as u32 + 1);
        for (k, &c) in heads.iter().enumerate().rev() {
            next[k] = last[c as usize];
            last[c as usize] = k as u32 + 1;
        }
        let prev_min = RangeMin::new(prev.clone());
        let next_max = RangeMin::new(next.iter().map(|&v| u32::MAX - v).collect());
        RdIndex {
            heads: heads.to_vec(),
            prev,
            next,
            prev_min,
            next_max,
        }
    }

    pub fn prev_links(&self) -> &[u32] {
        &self.prev
    }

    pub fn next_links(&self) -> &[u32] {
        &self.next
    }

    /// Appends one [`Distinct`] per head occurring in runs `[pk..=qk]`
    /// (0-based) to `out`, in no particular order. `scratch` is left null.
    pub fn range_distinct(
        &self,
        pk: usize,
        qk: usize,
        scratch: &mut RdScratch,
        out: &mut Vec<Distinct>,
    ) {
        debug_assert!(pk <= qk && qk < self.heads.len());
        let base = out.len();
        // leftmost runs: prev (1-based) < pk + 1
        scratch.stack.push((pk, qk));
        while let Some((lo, hi)) = scratch.stack.pop() {
            scratch.probes += 1;
            let m = self.prev_min.argmin(lo, hi);
            if self.prev[m] as usize > pk {
                continue;
            }
            scratch.slot[self.heads[m] as usize] = m as u32 + 1;
            if m > lo {
                scratch.stack.push((lo, m - 1));
            }
            if m < hi {
                scratch.stack.push((m + 1, hi));
            }
        }
        // rightmost runs: next (1-based) > qk + 1
        scratch.stack.push((pk, qk));
        while let Some((lo, hi)) = scratch.stack.pop() {
            scratch.probes += 1;
            let m = self.next_max.argmin(lo, hi);
            if self.next[m] as usize <= qk + 1 {
                continue;
            }
            let c = self.heads[m];
            let first = scratch.slot[c as usize] as usize - 1;
            scratch.slot[c as usize] = 0;
            out.push(Distinct {
                symbol: c,
                first,
                last: m,
            });
            if m > lo {
                scratch.stack.push((lo, m - 1));
            }
            if m < hi {
                scratch.stack.push((m + 1, hi));
            }
        }
        debug_assert!(out[base..].iter().all(|d| scratch.slot[d.symbol as usize] == 0));
    }
}

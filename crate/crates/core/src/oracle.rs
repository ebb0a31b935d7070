//! Brute-force reference implementation of the repeat definitions.
//!
//! Everything here is computed from the suffix array and LCP array of the
//! plain text: a substring `T[b..b+len)` is a repeat iff `len` does not exceed
//! the longest prefix of suffix `b` shared with another suffix. Nothing in this
//! module touches the BWT, so it can serve as an independent check of the
//! run-length based engine. Intended for texts up to ~10^5 symbols, except for
//! [`build_suffix_array`], which is also the desk-scale BWT builder.

use crate::classes::Classes;
use crate::text::{Symbol, Text, SENTINEL};

/// `sa[i - 1]` is the start of the lexicographically `i`-th suffix (both 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixArray {
    sa: Vec<usize>,
}

impl SuffixArray {
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// `SA[i]` for a 1-based row `i`.
    pub fn at(&self, i: usize) -> usize {
        self.sa[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.sa
    }

    /// Inverse permutation: `isa[b - 1]` is the row of suffix `b`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut isa = vec![0; self.sa.len()];
        for (row, &b) in self.sa.iter().enumerate() {
            isa[b - 1] = row + 1;
        }
        isa
    }
}

/// Prefix doubling, `O(n log^2 n)`.
pub fn build_suffix_array(t: &Text) -> SuffixArray {
    let s = t.symbols();
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<usize> = s.iter().map(|&c| c as usize).collect();
    let mut next = vec![0usize; n];
    let mut k = 1;
    loop {
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        next[sa[0]] = 0;
        for w in 1..n {
            let bump = (key(sa[w - 1]) != key(sa[w])) as usize;
            next[sa[w]] = next[sa[w - 1]] + bump;
        }
        std::mem::swap(&mut rank, &mut next);
        if rank[sa[n - 1]] == n - 1 || k >= n {
            break;
        }
        k *= 2;
    }
    SuffixArray {
        sa: sa.into_iter().map(|i| i + 1).collect(),
    }
}

/// LCP array: `lcp[i]` for rows `i` in `[1..n+1]` is the longest common prefix
/// of rows `i - 1` and `i` (0 at both ends). Index 0 is unused.
pub fn lcp_array(t: &Text, sa: &SuffixArray) -> Vec<usize> {
    let s = t.symbols();
    let n = s.len();
    let isa = sa.inverse();
    let mut lcp = vec![0usize; n + 2];
    let mut h = 0usize;
    for b in 0..n {
        let row = isa[b];
        if row > 1 {
            let prev = sa.at(row - 1) - 1;
            while b + h < n && prev + h < n && s[b + h] == s[prev + h] {
                h += 1;
            }
            lcp[row] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Everything the oracle knows about one repeat. Rows and positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatRecord {
    /// First row of the SA-interval.
    pub p: usize,
    /// Last row of the SA-interval.
    pub q: usize,
    pub len: usize,
    pub occ: Vec<usize>,
    pub lc: Vec<Symbol>,
    pub rc: Vec<Symbol>,
    pub classes: Classes,
    pub nocc: Vec<usize>,
}

impl RepeatRecord {
    /// Context diversity `(|lc|, |rc|)`.
    pub fn cd(&self) -> (usize, usize) {
        (self.lc.len(), self.rc.len())
    }

    pub fn nf(&self) -> usize {
        self.nocc.len()
    }

    /// A text position where this repeat starts.
    pub fn first_occ(&self) -> usize {
        self.occ[0]
    }
}

/// Precomputed tables shared by the oracle queries.
pub struct Oracle<'t> {
    text: &'t Text,
    sa: SuffixArray,
    lcp: Vec<usize>,
    /// `longest[b]`: longest `len` such that `T[b..b+len)` is a repeat (1-based, index 0 unused).
    longest: Vec<usize>,
    counts: Vec<usize>,
}

impl<'t> Oracle<'t> {
    pub fn new(text: &'t Text) -> Self {
        let sa = build_suffix_array(text);
        let lcp = lcp_array(text, &sa);
        let n = text.len();
        let mut longest = vec![0usize; n + 1];
        for row in 1..=n {
            longest[sa.at(row)] = lcp[row].max(lcp[row + 1]);
        }
        let mut counts = vec![0usize; text.sigma() as usize + 1];
        for &c in text.symbols() {
            counts[c as usize] += 1;
        }
        Oracle {
            text,
            sa,
            lcp,
            longest,
            counts,
        }
    }

    pub fn suffix_array(&self) -> &SuffixArray {
        &self.sa
    }

    pub fn text(&self) -> &Text {
        self.text
    }

    fn ch(&self, i: usize) -> Symbol {
        if i == 0 {
            SENTINEL
        } else {
            self.text.symbols()[i - 1]
        }
    }

    /// Whether `T[b..b+len)` occurs at least twice. The empty string is a repeat.
    pub fn is_repeat(&self, b: usize, len: usize) -> bool {
        len == 0 || (b >= 1 && b + len - 1 <= self.text.len() && len <= self.longest[b])
    }

    /// Whether the symbol at position `i` (with `T[0] = $`) occurs once in `T[1..n]`.
    pub fn is_unique_char(&self, i: usize) -> bool {
        self.counts[self.ch(i) as usize] == 1
    }

    /// Net occurrence test straight from the covering definition: some strictly
    /// larger interval around `[b..b+len)` spells a repeat iff one of the two
    /// one-character extensions does.
    pub fn is_net_occurrence(&self, b: usize, len: usize) -> bool {
        if len == 0 {
            return self.is_unique_char(b - 1) && self.is_unique_char(b);
        }
        if !self.is_repeat(b, len) {
            return false;
        }
        let left = b >= 2 && self.is_repeat(b - 1, len + 1);
        let right = b + len <= self.text.len() && self.is_repeat(b, len + 1);
        !left && !right
    }

    /// SA-interval of a pattern by binary search, `None` if it does not occur.
    pub fn interval_of(&self, pattern: &[Symbol]) -> Option<(usize, usize)> {
        let s = self.text.symbols();
        let n = s.len();
        let suffix = |row: usize| {
            let b = self.sa.at(row) - 1;
            &s[b..(b + pattern.len()).min(n)]
        };
        // first row in [1..=n] (0-based count) for which `pred` fails
        let split = |pred: &dyn Fn(usize) -> bool| {
            let (mut lo, mut hi) = (0usize, n);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if pred(mid + 1) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        let p = split(&|row| suffix(row) < pattern);
        let q = split(&|row| suffix(row) <= pattern);
        if p < q {
            Some((p + 1, q))
        } else {
            None
        }
    }

    /// Calls `f` with one record per repeat, ε first, then by (row, length).
    pub fn for_each_repeat(&self, mut f: impl FnMut(RepeatRecord)) {
        let n = self.text.len();
        let sigma = self.text.sigma() as usize;
        f(self.epsilon_record());
        let mut seen = vec![false; sigma + 1];
        for i in 1..=n {
            let (lo, hi) = (self.lcp[i], self.lcp[i + 1]);
            if hi <= lo {
                continue;
            }
            let mut j = i;
            let mut recs = Vec::with_capacity(hi - lo);
            for len in (lo + 1..=hi).rev() {
                while j < n && self.lcp[j + 1] >= len {
                    j += 1;
                }
                recs.push(self.record(i, j, len, &mut seen));
            }
            recs.into_iter().rev().for_each(&mut f);
        }
    }

    fn record(&self, p: usize, q: usize, len: usize, seen: &mut [bool]) -> RepeatRecord {
        let mut occ: Vec<usize> = (p..=q).map(|row| self.sa.at(row)).collect();
        occ.sort_unstable();
        let mut distinct = |it: &mut dyn Iterator<Item = Symbol>| {
            let mut out: Vec<Symbol> = Vec::new();
            for c in it {
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    out.push(c);
                }
            }
            for &c in &out {
                seen[c as usize] = false;
            }
            out.sort_unstable();
            out
        };
        let lc = distinct(&mut occ.iter().map(|&b| self.ch(b - 1)));
        let rc = distinct(&mut occ.iter().map(|&b| self.ch(b + len)));
        let nocc: Vec<usize> = occ
            .iter()
            .copied()
            .filter(|&b| self.is_net_occurrence(b, len))
            .collect();
        let mut classes = Classes::NONE;
        if lc.len() > 1 {
            classes |= Classes::LMR;
        }
        if rc.len() > 1 {
            classes |= Classes::RMR;
        }
        if lc.len() > 1 && rc.len() > 1 {
            classes |= Classes::MR;
        }
        if !nocc.is_empty() {
            classes |= Classes::NSMR;
        }
        // not a substring of another repeat: no one-character extension repeats
        let smr = occ.iter().all(|&b| {
            !(b >= 2 && self.is_repeat(b - 1, len + 1)) && !self.is_repeat(b, len + 1)
        });
        if smr {
            classes |= Classes::SMR;
        }
        RepeatRecord {
            p,
            q,
            len,
            occ,
            lc,
            rc,
            classes,
            nocc,
        }
    }

    fn epsilon_record(&self) -> RepeatRecord {
        let n = self.text.len();
        let all: Vec<Symbol> = (1..=self.text.sigma()).collect();
        let nocc: Vec<usize> = (1..=n).filter(|&b| self.is_net_occurrence(b, 0)).collect();
        let mut classes = Classes::LMR | Classes::RMR | Classes::MR;
        if !nocc.is_empty() {
            classes |= Classes::NSMR;
        }
        if (1..=n).all(|b| self.longest[b] == 0) {
            classes |= Classes::SMR;
        }
        RepeatRecord {
            p: 1,
            q: n,
            len: 0,
            occ: (1..=n).collect(),
            lc: all.clone(),
            rc: all,
            classes,
            nocc,
        }
    }

    /// All MUS intervals `[b..e]`, sorted by start.
    pub fn mus(&self) -> Vec<(usize, usize)> {
        let n = self.text.len();
        let mut out = Vec::new();
        for b in 1..=n {
            // shortest unique substring starting at b
            let e = b + self.longest[b];
            debug_assert!(e <= n);
            let inner_left = self.is_repeat(b + 1, e - b);
            if inner_left {
                out.push((b, e));
            }
        }
        out
    }
}

/// One record per repeat substring of `t`, including ε.
pub fn classify_all_repeats(t: &Text) -> Vec<RepeatRecord> {
    let oracle = Oracle::new(t);
    let mut out = Vec::new();
    oracle.for_each_repeat(|r| out.push(r));
    out
}

/// All minimal unique substrings `[b..e]`, sorted by `b`.
pub fn mus_bruteforce(t: &Text) -> Vec<(usize, usize)> {
    Oracle::new(t).mus()
}

/// Plain BWT `L[1..n]` with `L[i] = T[SA[i] - 1]` and `T[0] = $`.
pub fn bwt_from_sa(t: &Text, sa: &SuffixArray) -> Vec<Symbol> {
    let s = t.symbols();
    sa.as_slice()
        .iter()
        .map(|&b| if b == 1 { SENTINEL } else { s[b - 2] })
        .collect()
}

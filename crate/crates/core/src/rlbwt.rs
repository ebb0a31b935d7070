//! Run-length encoded BWT.
//!
//! Rows are 1-based (`L[1..n]`), run indices are 0-based. Besides the runs
//! themselves the structure keeps the C-array and, per run `k`, the number of
//! occurrences of `heads[k]` before the run, which is enough to evaluate LF at
//! any row once its run is known.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::io::{put_usize, Reader};
use crate::oracle::{build_suffix_array, bwt_from_sa};
use crate::text::{Symbol, Text, SENTINEL};

pub const RLBWT_MAGIC: &[u8] = b"RLBR1\0";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rlbwt {
    n: usize,
    sigma: u32,
    heads: Vec<Symbol>,
    lens: Vec<usize>,
    starts: Vec<usize>,
    /// `ccount[c]` = number of symbols smaller than `c`, for `c` in `[1..=sigma+1]`.
    ccount: Vec<usize>,
    head_rank: Vec<usize>,
}

/// Splits `L` into maximal runs.
pub fn run_length_encode(l: &[Symbol]) -> Result<Rlbwt> {
    if l.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut heads = Vec::new();
    let mut lens: Vec<usize> = Vec::new();
    for &c in l {
        if heads.last() == Some(&c) {
            *lens.last_mut().unwrap() += 1;
        } else {
            heads.push(c);
            lens.push(1);
        }
    }
    Rlbwt::from_runs(heads, lens)
}

impl Rlbwt {
    /// Builds from run heads and lengths. Only run structure is checked here;
    /// use [`Rlbwt::validate`] to check that the runs spell a BWT.
    pub fn from_runs(heads: Vec<Symbol>, lens: Vec<usize>) -> Result<Rlbwt> {
        if heads.is_empty() {
            return Err(Error::EmptyInput);
        }
        if heads.len() != lens.len() {
            return Err(Error::InvalidRlbwt("heads and lengths differ in count".into()));
        }
        if let Some(k) = heads.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::InvalidRlbwt(format!(
                "runs {k} and {} share head symbol {}",
                k + 1,
                heads[k]
            )));
        }
        if lens.contains(&0) {
            return Err(Error::InvalidRlbwt("zero-length run".into()));
        }
        if heads.contains(&0) {
            return Err(Error::UnknownSymbol(0));
        }
        let sigma = *heads.iter().max().unwrap();
        let mut counts = vec![0usize; sigma as usize + 2];
        let mut head_rank = Vec::with_capacity(heads.len());
        let mut starts = Vec::with_capacity(heads.len());
        let mut pos = 1usize;
        for (&c, &d) in heads.iter().zip(&lens) {
            starts.push(pos);
            head_rank.push(counts[c as usize]);
            counts[c as usize] += d;
            pos = pos
                .checked_add(d)
                .ok_or_else(|| Error::InvalidRlbwt("length overflow".into()))?;
        }
        let mut ccount = vec![0usize; sigma as usize + 2];
        for c in 2..=sigma as usize + 1 {
            ccount[c] = ccount[c - 1] + counts[c - 1];
        }
        Ok(Rlbwt {
            n: pos - 1,
            sigma,
            heads,
            lens,
            starts,
            ccount,
            head_rank,
        })
    }

    /// Desk-scale construction through the suffix array.
    pub fn from_text(t: &Text) -> Rlbwt {
        let sa = build_suffix_array(t);
        run_length_encode(&bwt_from_sa(t, &sa)).expect("BWT of a valid text")
    }

    /// Checks that the runs form the BWT of a sentinel-terminated text:
    /// a single `$`, every symbol of `[1..sigma]` present, and LF is one cycle.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidRlbwt("need at least two rows".into()));
        }
        if self.count(SENTINEL) != 1 {
            return Err(Error::InvalidRlbwt(format!(
                "sentinel occurs {} times",
                self.count(SENTINEL)
            )));
        }
        if let Some(c) = (1..=self.sigma).find(|&c| self.count(c) == 0) {
            return Err(Error::InvalidRlbwt(format!("symbol {c} never occurs")));
        }
        let mut row = 1;
        for step in 1..self.n {
            row = self.lf(row);
            if row == 1 {
                return Err(Error::InvalidRlbwt(format!(
                    "LF cycle closes after {step} of {} rows",
                    self.n
                )));
            }
        }
        if self.lf(row) != 1 {
            return Err(Error::InvalidRlbwt("LF is not a permutation".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.heads.len()
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn heads(&self) -> &[Symbol] {
        &self.heads
    }

    pub fn lens(&self) -> &[usize] {
        &self.lens
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn run_start(&self, k: usize) -> usize {
        self.starts[k]
    }

    pub fn run_end(&self, k: usize) -> usize {
        self.starts[k] + self.lens[k] - 1
    }

    /// Run containing row `i` (binary search over run starts).
    pub fn run_of(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.n);
        self.starts.partition_point(|&s| s <= i) - 1
    }

    pub fn symbol_at(&self, i: usize) -> Symbol {
        self.heads[self.run_of(i)]
    }

    /// Total occurrences of `c` in `L`.
    pub fn count(&self, c: Symbol) -> usize {
        if c == 0 || c > self.sigma {
            return 0;
        }
        self.ccount[c as usize + 1] - self.ccount[c as usize]
    }

    /// `C[c]`: number of symbols smaller than `c`.
    pub fn c_array(&self, c: Symbol) -> usize {
        self.ccount[c as usize]
    }

    /// LF at row `i` inside run `k`.
    pub fn lf_in_run(&self, k: usize, i: usize) -> usize {
        let c = self.heads[k] as usize;
        self.ccount[c] + self.head_rank[k] + (i - self.starts[k]) + 1
    }

    pub fn lf(&self, i: usize) -> usize {
        self.lf_in_run(self.run_of(i), i)
    }

    /// SA-interval `[C[c]+1..C[c+1]]` of the one-symbol string `c`.
    pub fn interval_of_char(&self, c: Symbol) -> Result<(usize, usize)> {
        if c == 0 || c > self.sigma || self.count(c) == 0 {
            return Err(Error::UnknownSymbol(c));
        }
        Ok((self.ccount[c as usize] + 1, self.ccount[c as usize + 1]))
    }

    /// Expands back to `L[1..n]`.
    pub fn decode(&self) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(self.n);
        for (&c, &d) in self.heads.iter().zip(&self.lens) {
            out.extend(std::iter::repeat_n(c, d));
        }
        out
    }

    /// Recovers `T` by walking LF from the row of suffix `$`.
    pub fn invert(&self) -> Vec<Symbol> {
        let mut t = vec![SENTINEL; self.n];
        let mut row = 1;
        for pos in (0..self.n - 1).rev() {
            let k = self.run_of(row);
            t[pos] = self.heads[k];
            row = self.lf_in_run(k, row);
        }
        t
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(6 + 24 + 16 * self.r());
        out.extend_from_slice(RLBWT_MAGIC);
        put_usize(&mut out, self.n);
        put_usize(&mut out, self.r());
        put_usize(&mut out, self.sigma as usize);
        for &h in &self.heads {
            put_usize(&mut out, h as usize);
        }
        for &d in &self.lens {
            put_usize(&mut out, d);
        }
        out
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Rlbwt> {
        let mut rd = Reader::new(buf);
        let out = Self::read(&mut rd)?;
        if !rd.is_at_end() {
            return Err(Error::Corrupt("trailing bytes after RLBWT".into()));
        }
        Ok(out)
    }

    pub(crate) fn read(rd: &mut Reader<'_>) -> Result<Rlbwt> {
        rd.magic(RLBWT_MAGIC)?;
        let n = rd.usize()?;
        let r = rd.usize()?;
        let sigma = rd.usize()?;
        if r > n {
            return Err(Error::Corrupt(format!("{r} runs for {n} rows")));
        }
        if sigma > r {
            return Err(Error::Corrupt(format!("sigma {sigma} exceeds {r} runs")));
        }
        let heads = rd
            .usize_vec(r)?
            .into_iter()
            .map(|h| match Symbol::try_from(h) {
                Ok(c) if h <= sigma => Ok(c),
                _ => Err(Error::Corrupt(format!("run head {h} exceeds sigma {sigma}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let lens = rd.usize_vec(r)?;
        let out = Rlbwt::from_runs(heads, lens)?;
        if out.n != n || out.sigma as usize != sigma {
            return Err(Error::Corrupt("RLBWT header disagrees with runs".into()));
        }
        Ok(out)
    }

    /// Text interchange format: a header line `n r sigma`, then one
    /// `head_symbol run_length` line per run.
    pub fn to_text_format(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n, self.r(), self.sigma);
        for (&c, &d) in self.heads.iter().zip(&self.lens) {
            writeln!(s, "{c} {d}").unwrap();
        }
        s
    }

    pub fn from_text_format(src: &str) -> Result<Rlbwt> {
        let bad = |msg: String| Error::InvalidRlbwt(msg);
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or(Error::EmptyInput)?;
        let nums = |line: usize, l: &str| -> Result<Vec<usize>> {
            l.split_whitespace()
                .map(|w| {
                    w.parse::<usize>()
                        .map_err(|_| bad(format!("line {line}: not an integer: {w:?}")))
                })
                .collect()
        };
        let h = nums(1, header)?;
        let [n, r, sigma] = h[..] else {
            return Err(bad("header must be `n r sigma`".into()));
        };
        if sigma > r {
            return Err(bad(format!("sigma = {sigma} exceeds r = {r}; alphabet must be dense")));
        }
        let mut heads = Vec::with_capacity(r.min(1 << 20));
        let mut lens = Vec::with_capacity(r.min(1 << 20));
        for (line, l) in lines {
            let v = nums(line, l)?;
            let [c, d] = v[..] else {
                return Err(bad(format!("line {line}: expected `head_symbol run_length`")));
            };
            if c > sigma {
                return Err(bad(format!("line {line}: symbol {c} exceeds sigma = {sigma}")));
            }
            heads.push(Symbol::try_from(c).map_err(|_| bad(format!("line {line}: symbol too large")))?);
            lens.push(d);
        }
        if heads.len() != r {
            return Err(bad(format!("header announces {r} runs, found {}", heads.len())));
        }
        let out = Rlbwt::from_runs(heads, lens)?;
        if out.n != n {
            return Err(bad(format!("header announces n = {n}, runs sum to {}", out.n)));
        }
        if out.sigma as usize != sigma {
            return Err(bad(format!(
                "header announces sigma = {sigma}, largest symbol is {}",
                out.sigma
            )));
        }
        Ok(out)
    }
}

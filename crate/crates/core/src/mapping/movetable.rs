//! Move data structure: LF (or FL) as a jump plus a short forward scan.
//!
//! The input intervals `[p_k..p_{k+1})` partition `[1..n]`; interval `k` maps
//! to `[p_{k'} + o_k ..)` where `k'` is the interval holding the image of
//! `p_k`. After balancing, every image meets at most `D` input intervals, so
//! finding the interval of `LF(i)` from `k'` takes at most `D` probes.

use std::collections::BTreeMap;

use super::{Cursor, Mapper};
use crate::error::{Error, Result};
use crate::io::{put_u64, put_usize, Reader};
use crate::rlbwt::Rlbwt;
use crate::text::Symbol;

pub const DEFAULT_BALANCE: usize = 4;

/// An interval `[input..input+len)` mapped onto `[output..output+len)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MovePair {
    pub input: usize,
    pub output: usize,
    pub len: usize,
    /// Payload copied to every piece the interval is split into.
    pub tag: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTable {
    /// `starts[k]` for `k` in `[0..h]`, plus `n + 1` at the end.
    starts: Vec<usize>,
    target: Vec<usize>,
    offset: Vec<usize>,
    tags: Vec<u32>,
    balance: usize,
}

impl MoveTable {
    /// Builds a balanced table from pairs whose inputs partition `[1..n]` and
    /// whose outputs do too.
    pub fn build(pairs: &[MovePair], balance: usize) -> MoveTable {
        assert!(balance >= 2, "balance parameter must be at least 2");
        let mut inputs: BTreeMap<usize, (usize, usize, u32)> = BTreeMap::new();
        let mut outputs: BTreeMap<usize, usize> = BTreeMap::new();
        for p in pairs {
            inputs.insert(p.input, (p.output, p.len, p.tag));
            outputs.insert(p.output, p.input);
        }
        let n = pairs.iter().map(|p| p.len).sum::<usize>();
        let mut work: Vec<usize> = inputs.keys().rev().copied().collect();
        while let Some(p) = work.pop() {
            let (q, len, tag) = inputs[&p];
            // the (balance)-th input start strictly inside the image opens the
            // (balance + 1)-th overlapped interval
            let Some(cut) = inputs
                .range(q + 1..q + len)
                .map(|(&s, _)| s)
                .nth(balance - 1)
            else {
                continue;
            };
            let o = cut - q;
            inputs.insert(p, (q, o, tag));
            inputs.insert(p + o, (q + o, len - o, tag));
            outputs.insert(q + o, p + o);
            work.push(p + o);
            // the new start p + o lies in exactly one image
            let (_, &owner) = outputs.range(..=p + o).next_back().expect("outputs cover [1..n]");
            work.push(owner);
        }
        let mut starts: Vec<usize> = inputs.keys().copied().collect();
        starts.push(n + 1);
        let locate = |pos: usize| starts.partition_point(|&s| s <= pos) - 1;
        let mut target = Vec::with_capacity(inputs.len());
        let mut offset = Vec::with_capacity(inputs.len());
        let mut tags = Vec::with_capacity(inputs.len());
        for &(q, _, tag) in inputs.values() {
            let k = locate(q);
            target.push(k);
            offset.push(q - starts[k]);
            tags.push(tag);
        }
        MoveTable {
            starts,
            target,
            offset,
            tags,
            balance,
        }
    }

    /// Number of intervals (`ĥ`).
    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    pub fn balance(&self) -> usize {
        self.balance
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts[..self.len()]
    }

    pub fn tag(&self, slot: usize) -> u32 {
        self.tags[slot]
    }

    pub fn locate(&self, pos: usize) -> Cursor {
        Cursor {
            pos,
            slot: self.starts.partition_point(|&s| s <= pos) - 1,
        }
    }

    #[inline]
    pub fn step(&self, c: Cursor) -> Cursor {
        self.step_traced(c).0
    }

    /// Like [`MoveTable::step`], also returning the number of intervals probed.
    #[inline]
    pub fn step_traced(&self, c: Cursor) -> (Cursor, usize) {
        let k = c.slot;
        debug_assert!(self.starts[k] <= c.pos && c.pos < self.starts[k + 1]);
        let mut j = self.target[k];
        let pos = self.starts[j] + self.offset[k] + (c.pos - self.starts[k]);
        let mut scans = 1;
        while self.starts[j + 1] <= pos {
            j += 1;
            scans += 1;
        }
        (Cursor { pos, slot: j }, scans)
    }

    /// Largest number of input intervals met by a single image.
    pub fn max_overlap(&self) -> usize {
        (0..self.len())
            .map(|k| {
                let first = self.target[k];
                let last_pos = self.starts[first] + self.offset[k] + (self.starts[k + 1] - self.starts[k]) - 1;
                self.locate(last_pos).slot - first + 1
            })
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn write(&self, out: &mut Vec<u8>) {
        put_usize(out, self.balance);
        put_usize(out, self.len());
        for k in 0..self.len() {
            put_usize(out, self.starts[k]);
            put_usize(out, self.target[k]);
            put_usize(out, self.offset[k]);
            put_u64(out, self.tags[k] as u64);
        }
    }

    pub(crate) fn read(rd: &mut Reader<'_>, n: usize) -> Result<MoveTable> {
        let balance = rd.usize()?;
        let h = rd.len_prefix(32)?;
        let mut starts = Vec::with_capacity(h + 1);
        let mut target = Vec::with_capacity(h);
        let mut offset = Vec::with_capacity(h);
        let mut tags = Vec::with_capacity(h);
        for _ in 0..h {
            starts.push(rd.usize()?);
            target.push(rd.usize()?);
            offset.push(rd.usize()?);
            tags.push(u32::try_from(rd.u64()?).map_err(|_| Error::Corrupt("tag overflow".into()))?);
        }
        starts.push(n + 1);
        let bad = |m: &str| Err(Error::Corrupt(format!("move table: {m}")));
        if h == 0 || starts[0] != 1 || starts.windows(2).any(|w| w[0] >= w[1]) {
            return bad("interval starts are not increasing from 1");
        }
        for k in 0..h {
            let t = target[k];
            if t >= h || offset[k] >= starts[t + 1] - starts[t] {
                return bad("target out of range");
            }
            let end = starts[t] + offset[k] + (starts[k + 1] - starts[k]);
            if end > n + 1 {
                return bad("image runs past n");
            }
        }
        Ok(MoveTable {
            starts,
            target,
            offset,
            tags,
            balance,
        })
    }
}

/// LF and FL move tables for one RLBWT.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveMapper {
    n: usize,
    lf: MoveTable,
    fl: MoveTable,
    /// Slot of the LF interval beginning each run.
    run_first: Vec<usize>,
}

impl MoveMapper {
    pub fn build(rl: &Rlbwt, balance: usize) -> MoveMapper {
        let r = rl.r();
        let lf_pairs: Vec<MovePair> = (0..r)
            .map(|k| MovePair {
                input: rl.run_start(k),
                output: rl.lf_in_run(k, rl.run_start(k)),
                len: rl.lens()[k],
                tag: k as u32,
            })
            .collect();
        let mut fl_pairs: Vec<MovePair> = lf_pairs
            .iter()
            .map(|p| MovePair {
                input: p.output,
                output: p.input,
                len: p.len,
                tag: rl.heads()[p.tag as usize],
            })
            .collect();
        fl_pairs.sort_unstable_by_key(|p| p.input);
        let lf = MoveTable::build(&lf_pairs, balance);
        let fl = MoveTable::build(&fl_pairs, balance);
        Self::assemble(rl.n(), lf, fl)
    }

    fn assemble(n: usize, lf: MoveTable, fl: MoveTable) -> MoveMapper {
        let mut run_first = Vec::new();
        for k in 0..lf.len() {
            if k == 0 || lf.tags[k] != lf.tags[k - 1] {
                run_first.push(k);
            }
        }
        MoveMapper {
            n,
            lf,
            fl,
            run_first,
        }
    }

    pub fn lf_table(&self) -> &MoveTable {
        &self.lf
    }

    pub fn fl_table(&self) -> &MoveTable {
        &self.fl
    }

    pub(crate) fn write(&self, out: &mut Vec<u8>) {
        self.lf.write(out);
        self.fl.write(out);
    }

    pub(crate) fn read(rd: &mut Reader<'_>, rl: &Rlbwt) -> Result<MoveMapper> {
        let lf = MoveTable::read(rd, rl.n())?;
        let fl = MoveTable::read(rd, rl.n())?;
        let m = Self::assemble(rl.n(), lf, fl);
        if m.run_first.len() != rl.r()
            || (0..rl.r()).any(|k| {
                m.lf.tags[m.run_first[k]] as usize != k || m.lf.starts[m.run_first[k]] != rl.run_start(k)
            })
        {
            return Err(Error::Corrupt("move table disagrees with RLBWT runs".into()));
        }
        Ok(m)
    }
}

impl Mapper for MoveMapper {
    fn n(&self) -> usize {
        self.n
    }

    fn lf_cursor(&self, pos: usize) -> Cursor {
        self.lf.locate(pos)
    }

    #[inline]
    fn lf_step(&self, c: Cursor) -> Cursor {
        self.lf.step(c)
    }

    #[inline]
    fn run_of(&self, c: Cursor) -> usize {
        self.lf.tags[c.slot] as usize
    }

    fn run_start_cursor(&self, run: usize) -> Cursor {
        let slot = self.run_first[run];
        Cursor {
            pos: self.lf.starts[slot],
            slot,
        }
    }

    fn run_end_cursor(&self, run: usize) -> Cursor {
        let slot = self.run_first.get(run + 1).copied().unwrap_or(self.lf.len()) - 1;
        Cursor {
            pos: self.lf.starts[slot + 1] - 1,
            slot,
        }
    }

    fn fl_cursor(&self, pos: usize) -> Cursor {
        self.fl.locate(pos)
    }

    #[inline]
    fn fl_step(&self, c: Cursor) -> Cursor {
        self.fl.step(c)
    }

    #[inline]
    fn first_symbol(&self, c: Cursor) -> Symbol {
        self.fl.tags[c.slot]
    }
}

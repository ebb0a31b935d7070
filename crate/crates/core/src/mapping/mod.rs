//! LF and FL mappings over an RLBWT.
//!
//! Both back-ends work with [`Cursor`]s: a row together with a back-end
//! specific slot identifying the interval that contains it. Carrying the slot
//! along lets the move table step in constant time; the baseline mapper
//! recomputes it with a binary search.

mod baseline;
mod movetable;

pub use baseline::BaselineMapper;
pub use movetable::{MoveMapper, MovePair, MoveTable, DEFAULT_BALANCE};

use crate::error::{Error, Result};
use crate::rlbwt::Rlbwt;
use crate::text::Symbol;

/// A 1-based row plus the slot of the interval containing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cursor {
    pub pos: usize,
    pub slot: usize,
}

pub trait Mapper {
    fn n(&self) -> usize;

    /// LF-side cursor for an arbitrary row (logarithmic).
    fn lf_cursor(&self, pos: usize) -> Cursor;
    fn lf_step(&self, c: Cursor) -> Cursor;
    /// Run of `L` containing an LF-side cursor.
    fn run_of(&self, c: Cursor) -> usize;
    fn run_start_cursor(&self, run: usize) -> Cursor;
    fn run_end_cursor(&self, run: usize) -> Cursor;

    /// FL-side cursor for an arbitrary row (logarithmic).
    fn fl_cursor(&self, pos: usize) -> Cursor;
    fn fl_step(&self, c: Cursor) -> Cursor;
    /// `F[pos]` for an FL-side cursor, i.e. the first symbol of the row's suffix.
    fn first_symbol(&self, c: Cursor) -> Symbol;

    fn lf(&self, pos: usize) -> usize {
        self.lf_step(self.lf_cursor(pos)).pos
    }

    fn fl(&self, pos: usize) -> usize {
        self.fl_step(self.fl_cursor(pos)).pos
    }
}

/// `T[SA[row] .. SA[row] + len)`, read off `F` along an FL walk.
pub fn spell<M: Mapper + ?Sized>(m: &M, row: usize, len: usize) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    let mut c = m.fl_cursor(row);
    out.push(m.first_symbol(c));
    for _ in 1..len {
        c = m.fl_step(c);
        out.push(m.first_symbol(c));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapperKind {
    Baseline,
    Move,
}

/// Runtime choice between the two back-ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMapper {
    Baseline(BaselineMapper),
    Move(MoveMapper),
}

impl AnyMapper {
    pub fn build(rl: &Rlbwt, kind: MapperKind, balance: usize) -> AnyMapper {
        match kind {
            MapperKind::Baseline => AnyMapper::Baseline(BaselineMapper::build(rl)),
            MapperKind::Move => AnyMapper::Move(MoveMapper::build(rl, balance)),
        }
    }

    pub fn kind(&self) -> MapperKind {
        match self {
            AnyMapper::Baseline(_) => MapperKind::Baseline,
            AnyMapper::Move(_) => MapperKind::Move,
        }
    }
}

macro_rules! dispatch {
    ($self:ident, $m:ident => $e:expr) => {
        match $self {
            AnyMapper::Baseline($m) => $e,
            AnyMapper::Move($m) => $e,
        }
    };
}

impl Mapper for AnyMapper {
    fn n(&self) -> usize {
        dispatch!(self, m => m.n())
    }
    fn lf_cursor(&self, pos: usize) -> Cursor {
        dispatch!(self, m => m.lf_cursor(pos))
    }
    #[inline]
    fn lf_step(&self, c: Cursor) -> Cursor {
        dispatch!(self, m => m.lf_step(c))
    }
    #[inline]
    fn run_of(&self, c: Cursor) -> usize {
        dispatch!(self, m => m.run_of(c))
    }
    fn run_start_cursor(&self, run: usize) -> Cursor {
        dispatch!(self, m => m.run_start_cursor(run))
    }
    fn run_end_cursor(&self, run: usize) -> Cursor {
        dispatch!(self, m => m.run_end_cursor(run))
    }
    fn fl_cursor(&self, pos: usize) -> Cursor {
        dispatch!(self, m => m.fl_cursor(pos))
    }
    #[inline]
    fn fl_step(&self, c: Cursor) -> Cursor {
        dispatch!(self, m => m.fl_step(c))
    }
    #[inline]
    fn first_symbol(&self, c: Cursor) -> Symbol {
        dispatch!(self, m => m.first_symbol(c))
    }
}

/// `SA` values at the first and last row of every run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySamples {
    start_sa: Vec<usize>,
    end_sa: Vec<usize>,
    starts: Vec<usize>,
    ends: Vec<usize>,
}

impl BoundarySamples {
    /// `SA[row]` if `row` begins or ends run `run`.
    pub fn get(&self, row: usize, run: usize) -> Option<usize> {
        if self.starts[run] == row {
            Some(self.start_sa[run])
        } else if self.ends[run] == row {
            Some(self.end_sa[run])
        } else {
            None
        }
    }

    pub fn require(&self, row: usize, run: usize) -> Result<usize> {
        self.get(row, run).ok_or(Error::MissingBoundarySample(row))
    }

    /// All samples as `(row, SA[row])`, sorted by row.
    pub fn to_vec(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.starts.len());
        for k in 0..self.starts.len() {
            out.push((self.starts[k], self.start_sa[k]));
            if self.ends[k] != self.starts[k] {
                out.push((self.ends[k], self.end_sa[k]));
            }
        }
        out
    }
}

/// One LF walk of length `n` from the row of suffix `$`, using
/// `SA[LF(i)] = SA[i] - 1`.
pub fn sample_sa_at_run_boundaries<M: Mapper + ?Sized>(rl: &Rlbwt, m: &M) -> BoundarySamples {
    let r = rl.r();
    let starts = rl.starts().to_vec();
    let ends: Vec<usize> = (0..r).map(|k| rl.run_end(k)).collect();
    let mut start_sa = vec![0; r];
    let mut end_sa = vec![0; r];
    let mut c = m.lf_cursor(1);
    for sa in (1..=rl.n()).rev() {
        let k = m.run_of(c);
        if c.pos == starts[k] {
            start_sa[k] = sa;
        }
        if c.pos == ends[k] {
            end_sa[k] = sa;
        }
        if sa > 1 {
            c = m.lf_step(c);
        }
    }
    BoundarySamples {
        start_sa,
        end_sa,
        starts,
        ends,
    }
}

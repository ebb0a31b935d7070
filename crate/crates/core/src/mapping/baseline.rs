use super::{Cursor, Mapper};
use crate::rlbwt::Rlbwt;
use crate::text::Symbol;

/// LF/FL by predecessor search over run starts.
///
/// Inside a run LF is an arithmetic progression, so storing LF at every run
/// start is enough. The FL side does the same over the LF-images of the runs.
/// Cursor slots are run indices (LF side) and image indices (FL side).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaselineMapper {
    n: usize,
    starts: Vec<usize>,
    lf_at_start: Vec<usize>,
    fl_starts: Vec<usize>,
    fl_targets: Vec<usize>,
    fl_symbols: Vec<Symbol>,
}

impl BaselineMapper {
    pub fn build(rl: &Rlbwt) -> Self {
        let r = rl.r();
        let starts = rl.starts().to_vec();
        let lf_at_start: Vec<usize> = (0..r).map(|k| rl.lf_in_run(k, starts[k])).collect();
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_unstable_by_key(|&k| lf_at_start[k]);
        BaselineMapper {
            n: rl.n(),
            fl_starts: order.iter().map(|&k| lf_at_start[k]).collect(),
            fl_targets: order.iter().map(|&k| starts[k]).collect(),
            fl_symbols: order.iter().map(|&k| rl.heads()[k]).collect(),
            starts,
            lf_at_start,
        }
    }

    fn pred(v: &[usize], pos: usize) -> usize {
        v.partition_point(|&s| s <= pos) - 1
    }
}

impl Mapper for BaselineMapper {
    fn n(&self) -> usize {
        self.n
    }

    fn lf_cursor(&self, pos: usize) -> Cursor {
        Cursor {
            pos,
            slot: Self::pred(&self.starts, pos),
        }
    }

    fn lf_step(&self, c: Cursor) -> Cursor {
        let pos = self.lf_at_start[c.slot] + c.pos - self.starts[c.slot];
        self.lf_cursor(pos)
    }

    fn run_of(&self, c: Cursor) -> usize {
        c.slot
    }

    fn run_start_cursor(&self, run: usize) -> Cursor {
        Cursor {
            pos: self.starts[run],
            slot: run,
        }
    }

    fn run_end_cursor(&self, run: usize) -> Cursor {
        let end = self.starts.get(run + 1).copied().unwrap_or(self.n + 1) - 1;
        Cursor {
            pos: end,
            slot: run,
        }
    }

    fn fl_cursor(&self, pos: usize) -> Cursor {
        Cursor {
            pos,
            slot: Self::pred(&self.fl_starts, pos),
        }
    }

    fn fl_step(&self, c: Cursor) -> Cursor {
        let pos = self.fl_targets[c.slot] + c.pos - self.fl_starts[c.slot];
        self.fl_cursor(pos)
    }

    fn first_symbol(&self, c: Cursor) -> Symbol {
        self.fl_symbols[c.slot]
    }
}

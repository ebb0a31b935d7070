//! Net occurrences, net frequencies and minimal unique substrings.

use std::ops::ControlFlow;

use crate::classes::Classes;
use crate::error::Result;
use crate::mapping::{BoundarySamples, Mapper};
use crate::renum::{Child, Engine, NodeReport};
use crate::rlbwt::Rlbwt;
use crate::text::SENTINEL;

/// A net occurrence `[start .. start + len)` of the repeat with
/// SA-interval `[p..q]`. `len` is 0 for the empty string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NetOccurrence {
    pub start: usize,
    pub len: usize,
    pub p: usize,
    pub q: usize,
    /// Net frequency of the owning repeat.
    pub nf: usize,
}

impl NetOccurrence {
    /// Inclusive end; `start - 1` for the empty string.
    pub fn end(&self) -> usize {
        self.start + self.len - 1
    }
}

/// One repeat with positive net frequency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfEntry {
    pub p: usize,
    pub q: usize,
    pub len: usize,
    pub nocc: Vec<usize>,
}

impl NfEntry {
    pub fn nf(&self) -> usize {
        self.nocc.len()
    }
}

/// Positions `b` with both `T[b-1]` and `T[b]` occurring once in `T`
/// (`T[0]` is `$`), sorted.
pub fn epsilon_net_occurrences(rl: &Rlbwt, samples: &BoundarySamples) -> Result<Vec<usize>> {
    let unique = |c| rl.count(c) == 1;
    let mut out = Vec::new();
    for (k, &c) in rl.heads().iter().enumerate() {
        if !unique(c) {
            continue;
        }
        // the row whose suffix starts with c is preceded by L at that row
        let f_row = rl.c_array(c) + 1;
        if !unique(rl.symbol_at(f_row)) {
            continue;
        }
        let b = if c == SENTINEL {
            rl.n()
        } else {
            samples.require(rl.run_start(k), k)? - 1
        };
        out.push(b);
    }
    out.sort_unstable();
    Ok(out)
}

/// Every repeat with positive net frequency, in traversal order. The empty
/// string is included only when `with_epsilon` is set.
pub fn net_frequency_table<M: Mapper + ?Sized>(
    engine: &Engine<'_, M>,
    with_epsilon: bool,
) -> Result<Vec<NfEntry>> {
    let mut out = Vec::new();
    engine.traverse(&mut |n: &NodeReport<'_>, _: &[Child]| {
        if n.classes.contains(Classes::NSMR) && (with_epsilon || n.depth > 0) {
            out.push(NfEntry {
                p: n.p,
                q: n.q,
                len: n.depth,
                nocc: n.net_occurrences.to_vec(),
            });
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// All net occurrences sorted by start.
pub fn all_net_occurrences<M: Mapper + ?Sized>(
    engine: &Engine<'_, M>,
    with_epsilon: bool,
) -> Result<Vec<NetOccurrence>> {
    let mut out = Vec::new();
    for e in net_frequency_table(engine, with_epsilon)? {
        out.extend(e.nocc.iter().map(|&start| NetOccurrence {
            start,
            len: e.len,
            p: e.p,
            q: e.q,
            nf: e.nocc.len(),
        }));
    }
    out.sort_unstable_by_key(|o| o.start);
    Ok(out)
}

/// MUS intervals `[b..e]` from the sorted net occurrences (empty string
/// included). Consecutive net occurrences `s_i`, `s_{i+1}` delimit the MUS
/// `[s_{i+1} - 1 .. t_i + 1]`, with `s_{m+1} = n + 1`.
pub fn mus_from_net_occurrences(netoccs: &[NetOccurrence], n: usize) -> Vec<(usize, usize)> {
    if netoccs.is_empty() {
        return vec![(n, n)];
    }
    netoccs
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let next = netoccs.get(i + 1).map_or(n + 1, |x| x.start);
            (next - 1, o.start + o.len)
        })
        .collect()
}

/// Counts behind the `< 2r` bounds on net occurrences and MUSs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub r: usize,
    pub net_occurrences: usize,
    pub mus: usize,
    /// No net occurrence starts at `SA[1]` when the first run is longer
    /// than 1, and likewise for `SA[n]` and the last run.
    pub boundary_rows_ok: bool,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.net_occurrences < 2 * self.r && self.mus < 2 * self.r && self.boundary_rows_ok
    }
}

pub fn check_bounds(
    rl: &Rlbwt,
    samples: &BoundarySamples,
    netoccs: &[NetOccurrence],
    mus: usize,
) -> Result<BoundCheck> {
    let r = rl.r();
    let starts_at = |b: usize| netoccs.binary_search_by_key(&b, |o| o.start).is_ok();
    let mut ok = true;
    if rl.lens()[0] > 1 && starts_at(samples.require(1, 0)?) {
        ok = false;
    }
    if rl.lens()[r - 1] > 1 && starts_at(samples.require(rl.n(), r - 1)?) {
        ok = false;
    }
    Ok(BoundCheck {
        r,
        net_occurrences: netoccs.len(),
        mus,
        boundary_rows_ok: ok,
    })
}

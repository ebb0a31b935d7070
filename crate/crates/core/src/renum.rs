//! Breadth-first enumeration of right-maximal repeats over an RLBWT.
//!
//! Each node `x` is carried as its SA-interval split by the symbol that
//! follows `x` (its right-extension list). Left extensions `ax` are built for
//! all `a` at once: a range-distinct query over the runs under each right
//! extension yields the sub-intervals preceded by `a`, and LF maps them to
//! the intervals of `axc`. Nodes are processed depth by depth.

use std::ops::ControlFlow;

use crate::classes::Classes;
use crate::error::{Error, Result};
use crate::mapping::{BoundarySamples, Cursor, Mapper};
use crate::net::epsilon_net_occurrences;
use crate::range_distinct::{Distinct, RdIndex, RdScratch};
use crate::rlbwt::Rlbwt;
use crate::text::{Symbol, SENTINEL};

/// One right extension `xc` of a node: `c` and the interval `I(xc)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RlEntry {
    pub sym: Symbol,
    pub p: Cursor,
    pub q: Cursor,
}

/// An owned node representation: `I(x)`, the right-extension list sorted by
/// symbol, and `|x|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RichRepr {
    pub p: usize,
    pub q: usize,
    pub depth: usize,
    pub rlist: Vec<RlEntry>,
}

impl RichRepr {
    /// `(symbol, p, q)` per right extension.
    pub fn intervals(&self) -> Vec<(Symbol, usize, usize)> {
        self.rlist.iter().map(|e| (e.sym, e.p.pos, e.q.pos)).collect()
    }
}

/// What the traversal knows about a visited node.
#[derive(Debug)]
pub struct NodeReport<'a> {
    pub depth: usize,
    pub p: usize,
    pub q: usize,
    pub rlist: &'a [RlEntry],
    pub lc_size: usize,
    pub rc_size: usize,
    pub classes: Classes,
    /// Sorted text positions.
    pub net_occurrences: &'a [usize],
}

impl NodeReport<'_> {
    pub fn occ_count(&self) -> usize {
        self.q - self.p + 1
    }

    pub fn cd(&self) -> (usize, usize) {
        (self.lc_size, self.rc_size)
    }

    pub fn nf(&self) -> usize {
        self.net_occurrences.len()
    }

    /// A row of `I(x)`; used to spell `x` by FL walking.
    pub fn witness(&self) -> usize {
        self.p
    }
}

/// A left extension `ax` that will be visited at the next depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Child {
    pub sym: Symbol,
    pub p: usize,
    pub q: usize,
}

pub trait Visitor {
    fn visit(&mut self, node: &NodeReport<'_>, children: &[Child]) -> ControlFlow<()>;
}

impl<F> Visitor for F
where
    F: FnMut(&NodeReport<'_>, &[Child]) -> ControlFlow<()>,
{
    fn visit(&mut self, node: &NodeReport<'_>, children: &[Child]) -> ControlFlow<()> {
        self(node, children)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TraversalStats {
    pub nodes: usize,
    /// Left extensions `ax` computed, kept or not.
    pub weiner_links: usize,
    pub lf_calls: usize,
    pub rd_outputs: usize,
    pub rd_probes: usize,
    /// Largest number of right-extension entries held by the current and
    /// next depth together.
    pub peak_rlist: usize,
    pub max_depth: usize,
}

impl TraversalStats {
    /// LF calls plus range-distinct outputs.
    pub fn work(&self) -> usize {
        self.lf_calls + self.rd_outputs
    }
}

/// Borrowed structures needed to run the enumeration.
pub struct Engine<'a, M: Mapper + ?Sized> {
    rl: &'a Rlbwt,
    mapper: &'a M,
    rd: &'a RdIndex,
    samples: &'a BoundarySamples,
}

struct Scratch {
    by_sym: Vec<Vec<RlEntry>>,
    rd: RdScratch,
    out: Vec<Distinct>,
    used: Vec<Distinct>,
    net: Vec<usize>,
}

impl Scratch {
    fn new(sigma: u32) -> Scratch {
        Scratch {
            by_sym: vec![Vec::new(); sigma as usize + 1],
            rd: RdScratch::new(sigma),
            out: Vec::new(),
            used: Vec::new(),
            net: Vec::new(),
        }
    }
}

#[derive(Clone, Copy)]
struct Slot {
    depth: usize,
    start: usize,
    len: usize,
}

#[derive(Default)]
struct Bucket {
    nodes: Vec<Slot>,
    entries: Vec<RlEntry>,
}

impl<'a, M: Mapper + ?Sized> Engine<'a, M> {
    pub fn new(
        rl: &'a Rlbwt,
        mapper: &'a M,
        rd: &'a RdIndex,
        samples: &'a BoundarySamples,
    ) -> Engine<'a, M> {
        Engine {
            rl,
            mapper,
            rd,
            samples,
        }
    }

    pub fn rlbwt(&self) -> &'a Rlbwt {
        self.rl
    }

    pub fn mapper(&self) -> &'a M {
        self.mapper
    }

    pub fn samples(&self) -> &'a BoundarySamples {
        self.samples
    }

    /// The root: `[1..n]` split by first symbol.
    pub fn initial_repr(&self) -> RichRepr {
        let rlist = (1..=self.rl.sigma())
            .map(|c| {
                let (p, q) = self.rl.interval_of_char(c).expect("every symbol occurs");
                RlEntry {
                    sym: c,
                    p: self.mapper.lf_cursor(p),
                    q: self.mapper.lf_cursor(q),
                }
            })
            .collect();
        RichRepr {
            p: 1,
            q: self.rl.n(),
            depth: 0,
            rlist,
        }
    }

    /// All left extensions `ax` with `a != $`, ascending by `a`.
    pub fn extend_repr(&self, x: &RichRepr) -> Vec<(Symbol, RichRepr)> {
        let mut s = Scratch::new(self.rl.sigma());
        let mut stats = TraversalStats::default();
        self.extend(&x.rlist, &mut s, &mut stats);
        let mut out = Vec::new();
        for d in &s.used {
            if d.symbol == SENTINEL {
                continue;
            }
            let list = std::mem::take(&mut s.by_sym[d.symbol as usize]);
            out.push((
                d.symbol,
                RichRepr {
                    p: list[0].p.pos,
                    q: list[list.len() - 1].q.pos,
                    depth: x.depth + 1,
                    rlist: list,
                },
            ));
        }
        out.sort_by_key(|e| e.0);
        out
    }

    /// Fills `s.by_sym[a]` with `rlist(ax)` for every `a`, and `s.used` with
    /// the distinct symbols of `L[p..q]`.
    fn extend(&self, rlist: &[RlEntry], s: &mut Scratch, stats: &mut TraversalStats) {
        let m = self.mapper;
        for e in rlist {
            let (k1, k2) = (m.run_of(e.p), m.run_of(e.q));
            s.out.clear();
            self.rd.range_distinct(k1, k2, &mut s.rd, &mut s.out);
            stats.rd_outputs += s.out.len();
            for d in &s.out {
                if d.symbol == SENTINEL {
                    continue;
                }
                let pc = if d.first == k1 {
                    e.p
                } else {
                    m.run_start_cursor(d.first)
                };
                let qc = if d.last == k2 {
                    e.q
                } else {
                    m.run_end_cursor(d.last)
                };
                let lp = m.lf_step(pc);
                let lq = if pc.pos == qc.pos {
                    lp
                } else {
                    stats.lf_calls += 1;
                    m.lf_step(qc)
                };
                stats.lf_calls += 1;
                s.by_sym[d.symbol as usize].push(RlEntry {
                    sym: e.sym,
                    p: lp,
                    q: lq,
                });
            }
        }
        let (first, last) = (rlist[0].p, rlist[rlist.len() - 1].q);
        s.used.clear();
        self.rd
            .range_distinct(m.run_of(first), m.run_of(last), &mut s.rd, &mut s.used);
        stats.rd_outputs += s.used.len();
    }

    /// Net occurrences of a non-empty `x` into `s.net`, sorted. Requires the
    /// products of [`Engine::extend`].
    fn net_occurrences(&self, rlist: &[RlEntry], s: &mut Scratch) -> Result<()> {
        s.net.clear();
        for e in rlist {
            if e.p.pos != e.q.pos {
                continue;
            }
            let run = self.mapper.run_of(e.p);
            let a = self.rl.heads()[run];
            let unique = a == SENTINEL || {
                let ax = &s.by_sym[a as usize];
                ax.len() == 1 && ax[0].p.pos == ax[0].q.pos
            };
            if unique {
                s.net.push(self.samples.require(e.p.pos, run)?);
            }
        }
        s.net.sort_unstable();
        Ok(())
    }

    /// Visits every right-maximal repeat, root first, then by depth and
    /// interval start.
    pub fn traverse<V: Visitor + ?Sized>(&self, visitor: &mut V) -> Result<TraversalStats> {
        let mut stats = TraversalStats::default();
        let mut s = Scratch::new(self.rl.sigma());
        let mut cur = Bucket::default();
        let mut next = Bucket::default();
        let mut children = Vec::new();
        let root = self.initial_repr();
        cur.entries.extend_from_slice(&root.rlist);
        cur.nodes.push(Slot {
            depth: 0,
            start: 0,
            len: root.rlist.len(),
        });
        let eps_net = epsilon_net_occurrences(self.rl, self.samples)?;
        while !cur.nodes.is_empty() {
            for &slot in &cur.nodes {
                let rlist = &cur.entries[slot.start..slot.start + slot.len];
                self.extend(rlist, &mut s, &mut stats);
                let p = rlist[0].p.pos;
                let q = rlist[rlist.len() - 1].q.pos;
                if slot.depth > 0 {
                    self.net_occurrences(rlist, &mut s)?;
                } else {
                    s.net.clone_from(&eps_net);
                }
                let lc_size = s.used.len();
                let rc_size = rlist.len();
                let occ = q - p + 1;
                let mut classes = Classes::RMR;
                if lc_size >= 2 {
                    classes |= Classes::LMR | Classes::MR;
                }
                if lc_size == rc_size && rc_size == occ {
                    classes |= Classes::SMR;
                }
                if !s.net.is_empty() {
                    classes |= Classes::NSMR;
                }
                s.used.sort_unstable_by_key(|d| d.symbol);
                children.clear();
                for d in &s.used {
                    if d.symbol == SENTINEL {
                        continue;
                    }
                    stats.weiner_links += 1;
                    let list = &mut s.by_sym[d.symbol as usize];
                    if list.len() >= 2 {
                        children.push(Child {
                            sym: d.symbol,
                            p: list[0].p.pos,
                            q: list[list.len() - 1].q.pos,
                        });
                        next.nodes.push(Slot {
                            depth: slot.depth + 1,
                            start: next.entries.len(),
                            len: list.len(),
                        });
                        next.entries.extend_from_slice(list);
                    }
                    list.clear();
                }
                stats.nodes += 1;
                stats.max_depth = stats.max_depth.max(slot.depth);
                stats.peak_rlist = stats
                    .peak_rlist
                    .max(cur.entries.len() + next.entries.len());
                let report = NodeReport {
                    depth: slot.depth,
                    p,
                    q,
                    rlist,
                    lc_size,
                    rc_size,
                    classes,
                    net_occurrences: &s.net,
                };
                if visitor.visit(&report, &children).is_break() {
                    return Err(Error::VisitorAbort);
                }
            }
            let entries = &next.entries;
            next.nodes.sort_by_key(|n| entries[n.start].p.pos);
            std::mem::swap(&mut cur, &mut next);
            next.nodes.clear();
            next.entries.clear();
        }
        stats.rd_probes = s.rd.probes;
        Ok(stats)
    }
}

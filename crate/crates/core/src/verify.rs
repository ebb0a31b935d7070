//! Cross-checks of the compressed pipeline against the suffix-array oracle.
//!
//! Each check returns `Err` with a description of the first disagreement.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use crate::classes::Classes;
use crate::index::{Index, IndexOptions};
use crate::mapping::{spell, AnyMapper, BaselineMapper, Mapper, MoveMapper};
use crate::net::{all_net_occurrences, check_bounds, mus_from_net_occurrences, BoundCheck};
use crate::oracle::{build_suffix_array, mus_bruteforce, Oracle};
use crate::renum::{Child, NodeReport, TraversalStats};
use crate::rlbwt::Rlbwt;
use crate::text::{Symbol, Text};

pub type Check<T = ()> = std::result::Result<T, String>;

/// `(p, q, cd, classes, nocc)` per repeat string.
pub type RepeatTable = BTreeMap<Vec<Symbol>, (usize, usize, (usize, usize), Classes, Vec<usize>)>;

/// Right-maximal repeats as seen by the oracle.
pub fn oracle_rmr_table(t: &Text) -> RepeatTable {
    let mut out = BTreeMap::new();
    Oracle::new(t).for_each_repeat(|rec| {
        if rec.classes.contains(Classes::RMR) {
            let s = t.symbols()[rec.first_occ() - 1..][..rec.len].to_vec();
            out.insert(s, (rec.p, rec.q, rec.cd(), rec.classes, rec.nocc.clone()));
        }
    });
    out
}

/// Right-maximal repeats as reported by a traversal over `idx`.
pub fn engine_rmr_table(idx: &Index) -> Check<(RepeatTable, TraversalStats)> {
    let mut out = BTreeMap::new();
    let mut dup = None;
    let stats = idx
        .engine()
        .traverse(&mut |n: &NodeReport<'_>, _: &[Child]| {
            let s = spell(idx.mapper(), n.witness(), n.depth);
            let row = (n.p, n.q, n.cd(), n.classes, n.net_occurrences.to_vec());
            if out.insert(s.clone(), row).is_some() {
                dup = Some(s);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })
        .map_err(|e| format!("traversal failed: {e} (duplicate {dup:?})"))?;
    Ok((out, stats))
}

fn compare_tables(got: &RepeatTable, want: &RepeatTable) -> Check {
    if got == want {
        return Ok(());
    }
    for (k, v) in want {
        match got.get(k) {
            None => return Err(format!("missing repeat {k:?}")),
            Some(g) if g != v => return Err(format!("repeat {k:?}: got {g:?}, want {v:?}")),
            _ => {}
        }
    }
    let extra = got.keys().find(|k| !want.contains_key(*k));
    Err(format!("unexpected repeat {extra:?}"))
}

/// Engine classification equals the oracle's on right-maximal repeats.
pub fn check_classification(t: &Text, idx: &Index) -> Check<TraversalStats> {
    let (got, stats) = engine_rmr_table(idx)?;
    compare_tables(&got, &oracle_rmr_table(t))?;
    Ok(stats)
}

/// Sorted net occurrences and MUSs equal the brute-force answers; returns
/// the `2r` bound counts.
pub fn check_net_and_mus(t: &Text, idx: &Index) -> Check<BoundCheck> {
    let occs = all_net_occurrences(&idx.engine(), true).map_err(|e| e.to_string())?;
    let mut want = Vec::new();
    Oracle::new(t).for_each_repeat(|rec| want.extend(rec.nocc.iter().map(|&b| (b, rec.len))));
    want.sort_unstable();
    let got: Vec<(usize, usize)> = occs.iter().map(|o| (o.start, o.len)).collect();
    if got != want {
        return Err(format!("net occurrences: got {got:?}, want {want:?}"));
    }
    let mus = mus_from_net_occurrences(&occs, t.len());
    let want_mus = mus_bruteforce(t);
    if mus != want_mus {
        return Err(format!("MUS: got {mus:?}, want {want_mus:?}"));
    }
    check_bounds(idx.rlbwt(), idx.samples(), &occs, mus.len()).map_err(|e| e.to_string())
}

/// Pointwise LF/FL agreement of both back-ends with the suffix array, and
/// the largest number of intervals scanned by one move step.
pub fn check_mappers(t: &Text, rl: &Rlbwt, balance: usize) -> Check<usize> {
    let sa = build_suffix_array(t);
    let inv = sa.inverse();
    let n = t.len();
    let base = BaselineMapper::build(rl);
    let mv = MoveMapper::build(rl, balance);
    let mut max_scan = 0;
    for i in 1..=n {
        let prev = if sa.at(i) == 1 { n } else { sa.at(i) - 1 };
        let lf = inv[prev - 1];
        let next = if sa.at(i) == n { 1 } else { sa.at(i) + 1 };
        let fl = inv[next - 1];
        if base.lf(i) != lf || mv.lf(i) != lf {
            return Err(format!("LF({i}) = {lf}: baseline {}, move {}", base.lf(i), mv.lf(i)));
        }
        if base.fl(i) != fl || mv.fl(i) != fl {
            return Err(format!("FL({i}) = {fl}: baseline {}, move {}", base.fl(i), mv.fl(i)));
        }
        let c = mv.lf_table().locate(i);
        max_scan = max_scan.max(mv.lf_table().step_traced(c).1);
        let c = mv.fl_table().locate(i);
        max_scan = max_scan.max(mv.fl_table().step_traced(c).1);
    }
    Ok(max_scan)
}

/// Largest per-query work over all checked patterns.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QueryCheck {
    pub patterns: usize,
    /// Largest `work / (|P| + 1)` seen, as a ratio.
    pub max_work_ratio: f64,
}

/// Oracle net frequencies of every repeat.
pub fn oracle_nf_map(t: &Text) -> HashMap<Vec<Symbol>, usize> {
    let mut out = HashMap::new();
    Oracle::new(t).for_each_repeat(|rec| {
        if rec.nf() > 0 {
            out.insert(t.symbols()[rec.first_occ() - 1..][..rec.len].to_vec(), rec.nf());
        }
    });
    out
}

/// `nf_query` equals the oracle on every substring up to `max_len` and on
/// the given extra patterns.
pub fn check_nf_queries(
    t: &Text,
    idx: &Index,
    max_len: usize,
    extra: &[Vec<Symbol>],
) -> Check<QueryCheck> {
    let nf = oracle_nf_map(t);
    let s = t.symbols();
    let mut out = QueryCheck::default();
    let mut buf = Vec::new();
    let mut one = |p: &[Symbol]| -> Check {
        let want = nf.get(p).copied().unwrap_or(0);
        let got = idx.trie().nf_query_traced(idx.mapper(), p, &mut buf);
        if got.nf != want {
            return Err(format!("nf({p:?}) = {}, want {want}", got.nf));
        }
        out.patterns += 1;
        out.max_work_ratio = out.max_work_ratio.max(got.work as f64 / (p.len() + 1) as f64);
        Ok(())
    };
    one(&[])?;
    for i in 0..s.len() {
        for j in i + 1..=s.len().min(i + max_len) {
            one(&s[i..j])?;
        }
    }
    for p in extra {
        one(p)?;
    }
    Ok(out)
}

/// Every check above, on both back-ends and through a serialization round
/// trip. Used by the `verify` command.
pub fn verify_text(t: &Text, balance: usize) -> Check<Vec<String>> {
    let mut log = Vec::new();
    let rl = Rlbwt::from_text(t);
    let scan = check_mappers(t, &rl, balance)?;
    log.push(format!("mappers agree on {} rows; max scan {scan}", t.len()));
    if scan > balance {
        return Err(format!("move step scanned {scan} > {balance} intervals"));
    }
    for kind in [crate::mapping::MapperKind::Baseline, crate::mapping::MapperKind::Move] {
        let opts = IndexOptions {
            mapper: kind,
            balance,
            ..IndexOptions::default()
        };
        let idx = Index::from_text(t, opts).map_err(|e| e.to_string())?;
        let stats = check_classification(t, &idx)?;
        log.push(format!("{kind:?}: {} right-maximal repeats agree", stats.nodes));
        let b = check_net_and_mus(t, &idx)?;
        if !b.holds() {
            return Err(format!("2r bounds violated: {b:?}"));
        }
        log.push(format!(
            "{kind:?}: {} net occurrences, {} MUSs, r = {}",
            b.net_occurrences, b.mus, b.r
        ));
        let back = Index::from_bytes(&idx.to_bytes()).map_err(|e| e.to_string())?;
        let q = check_nf_queries(t, &back, 50, &[])?;
        log.push(format!("{kind:?}: {} NF queries agree after reload", q.patterns));
        if let AnyMapper::Move(_) = idx.mapper() {
            log.push(format!("move table intervals: {}", idx.mapper_intervals()));
        }
    }
    Ok(log)
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rle_repeats::index::{Index, IndexOptions};
use rle_repeats::mapping::{spell, BaselineMapper, Mapper, MapperKind, MoveMapper};
use rle_repeats::oracle::{build_suffix_array, Oracle};
use rle_repeats::renum::{Child, NodeReport};
use rle_repeats::rlbwt::Rlbwt;
use rle_repeats::text::{encode_text, Symbol, Text};
use rle_repeats::verify::{check_classification, check_mappers, check_net_and_mus, check_nf_queries};
use rle_repeats::Classes;

const GOLDEN_TIME_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_TIME_LIMIT: Duration = Duration::from_secs(300);
const BIG_TIME_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_TEXTS: usize = 300;
const MAX_N: usize = 2000;
const BALANCE: usize = 4;
const MOVE_INTERVALS_PER_RUN: f64 = 3.0;
const MAX_PATTERN_LEN: usize = 50;
const NON_SUBSTRINGS: usize = 200;
const TRAVERSAL_WORK_PER_CHAR: f64 = 10.0;
const QUERY_WORK_PER_SYMBOL: f64 = 10.0;
/// Peak right-extension entries held at once, per run.
const PEAK_RLIST_PER_RUN: f64 = 4.0;
const BIG_UNIT: usize = 10_000;
const BIG_COPIES: usize = 100;
const BIG_RATE: f64 = 0.01;
const SIZE_DOUBLING_RATIO: f64 = 1.8;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: u32, name: &str, result: Result<String, String>) {
        match result {
            Ok(detail) => println!("criterion {id} [{name}]: PASS ({detail})"),
            Err(detail) => {
                self.failed += 1;
                println!("criterion {id} [{name}]: FAIL ({detail})");
            }
        }
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// a=2 b=3 c=4, $=1
fn sym(s: &str) -> Vec<Symbol> {
    s.bytes()
        .map(|b| if b == b'$' { 1 } else { (b - b'a') as Symbol + 2 })
        .collect()
}

fn golden_tables() -> Result<String, String> {
    let start = Instant::now();
    let t = encode_text(b"abcbbcbcabc").map_err(|e| e.to_string())?;
    let sa = build_suffix_array(&t);
    ensure(sa.as_slice() == [12, 9, 1, 4, 10, 7, 2, 5, 11, 8, 3, 6], || {
        format!("SA {:?}", sa.as_slice())
    })?;
    let rl = Rlbwt::from_text(&t);
    let lf_want = [9, 10, 1, 11, 2, 12, 3, 4, 5, 6, 7, 8];
    let fl_want = [3, 5, 7, 8, 9, 10, 11, 12, 1, 2, 4, 6];
    let l_want = sym("cc$cacabbbbb");
    let base = BaselineMapper::build(&rl);
    let mv = MoveMapper::build(&rl, BALANCE);
    for i in 1..=12 {
        ensure(rl.lf(i) == lf_want[i - 1], || format!("RLBWT LF({i}) = {}", rl.lf(i)))?;
        ensure(base.lf(i) == lf_want[i - 1] && mv.lf(i) == lf_want[i - 1], || {
            format!("mapper LF({i})")
        })?;
        ensure(base.fl(i) == fl_want[i - 1] && mv.fl(i) == fl_want[i - 1], || {
            format!("mapper FL({i})")
        })?;
        ensure(rl.symbol_at(i) == l_want[i - 1], || format!("L[{i}]"))?;
    }
    ensure(rl.r() == 7, || format!("r = {}", rl.r()))?;
    ensure(rl.heads() == sym("c$cacab").as_slice(), || format!("heads {:?}", rl.heads()))?;
    ensure(rl.lens() == [2, 1, 1, 1, 1, 1, 5], || format!("lens {:?}", rl.lens()))?;
    let took = start.elapsed();
    ensure(took < GOLDEN_TIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!("12 rows of SA/LF/FL/L exact, r = 7, {took:?}"))
}

type GoldenRow = ((usize, usize), Classes, Vec<usize>);

fn golden_classification() -> Result<String, String> {
    let t = encode_text(b"abcbbcbcabc").map_err(|e| e.to_string())?;
    let idx = Index::from_text(&t, IndexOptions::default()).map_err(|e| e.to_string())?;
    let mut got: BTreeMap<Vec<Symbol>, GoldenRow> = BTreeMap::new();
    idx.engine()
        .traverse(&mut |n: &NodeReport<'_>, _: &[Child]| {
            let key = spell(idx.mapper(), n.witness(), n.depth);
            got.insert(key, (n.cd(), n.classes, n.net_occurrences.to_vec()));
            ControlFlow::Continue(())
        })
        .map_err(|e| e.to_string())?;
    let (lmr, rmr, mr, nsmr, smr) = (Classes::LMR, Classes::RMR, Classes::MR, Classes::NSMR, Classes::SMR);
    let want: Vec<(&str, (usize, usize), Classes, Vec<usize>)> = vec![
        ("", (4, 4), lmr | rmr | mr, vec![]),
        ("b", (3, 2), lmr | rmr | mr, vec![]),
        ("c", (1, 3), rmr, vec![]),
        ("bc", (3, 3), lmr | rmr | mr | nsmr, vec![7]),
        ("cb", (1, 2), rmr, vec![]),
        ("abc", (2, 2), lmr | rmr | mr | nsmr | smr, vec![1, 9]),
        ("bcb", (2, 2), lmr | rmr | mr | nsmr | smr, vec![2, 5]),
    ];
    ensure(got.len() == want.len(), || format!("{} nodes visited", got.len()))?;
    for (s, cd, classes, nocc) in &want {
        let row = got.get(&sym(s)).ok_or_else(|| format!("{s:?} not visited"))?;
        ensure(row == &(*cd, *classes, nocc.clone()), || format!("{s:?}: {row:?}"))?;
        let nf = idx.trie().nf_query(idx.mapper(), &sym(s));
        let want_nf = if s.is_empty() { 0 } else { nocc.len() };
        ensure(nf == want_nf, || format!("NF({s:?}) = {nf}"))?;
    }
    // left-maximal only: checked against the oracle
    let oracle = Oracle::new(&t);
    for (s, cd) in [("a", (2, 1)), ("ab", (2, 1))] {
        let mut found = None;
        oracle.for_each_repeat(|rec| {
            if t.symbols()[rec.first_occ() - 1..][..rec.len] == sym(s)[..] {
                found = Some((rec.cd(), rec.classes, rec.nf()));
            }
        });
        ensure(found == Some((cd, lmr, 0)), || format!("oracle {s:?}: {found:?}"))?;
    }
    Ok("7 right-maximal repeats plus a, ab match the concept tables".into())
}

#[derive(Default)]
struct Sweep {
    texts: usize,
    failures: [Vec<String>; 9],
    max_scan: usize,
    max_hat_ratio: f64,
    max_work_ratio: f64,
    max_query_ratio: f64,
    max_peak_ratio: f64,
    max_net_ratio: f64,
    max_mus_ratio: f64,
    queries: usize,
    elapsed: Duration,
}

fn non_substrings(t: &Text, oracle: &Oracle<'_>, rng: &mut ChaCha8Rng) -> Vec<Vec<Symbol>> {
    // alphabet plus one absent symbol
    let top = t.sigma() + 1;
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < NON_SUBSTRINGS && tries < 100 * NON_SUBSTRINGS {
        tries += 1;
        let len = rng.gen_range(1..=MAX_PATTERN_LEN.min(t.len() + 2));
        let p: Vec<Symbol> = (0..len).map(|_| rng.gen_range(2..=top)).collect();
        if oracle.interval_of(&p).is_none() {
            out.push(p);
        }
    }
    out
}

fn sweep_one(s: &common::Sample, acc: &mut Sweep, rng: &mut ChaCha8Rng) {
    let fail = |acc: &mut Sweep, c: usize, msg: String| {
        acc.failures[c].push(format!("{}: {msg}", s.name));
    };
    let t = encode_text(&s.raw).expect("corpus text");
    let n = t.len();
    let rl = Rlbwt::from_text(&t);
    let r = rl.r();
    acc.texts += 1;

    match check_mappers(&t, &rl, BALANCE) {
        Ok(scan) => {
            acc.max_scan = acc.max_scan.max(scan);
            if scan > BALANCE {
                fail(acc, 5, format!("step scanned {scan} intervals"));
            }
        }
        Err(e) => fail(acc, 5, e),
    }
    let mv = MoveMapper::build(&rl, BALANCE);
    let hat = mv.lf_table().len().max(mv.fl_table().len());
    acc.max_hat_ratio = acc.max_hat_ratio.max(hat as f64 / r as f64);
    if hat as f64 > MOVE_INTERVALS_PER_RUN * r as f64 {
        fail(acc, 5, format!("{hat} move intervals for r = {r}"));
    }

    for kind in [MapperKind::Move, MapperKind::Baseline] {
        let opts = IndexOptions {
            mapper: kind,
            balance: BALANCE,
            with_nocc: true,
            ..IndexOptions::default()
        };
        let idx = Index::from_text(&t, opts).expect("index");
        match check_classification(&t, &idx) {
            Ok(stats) if kind == MapperKind::Move => {
                let ratio = stats.work() as f64 / n as f64;
                acc.max_work_ratio = acc.max_work_ratio.max(ratio);
                if ratio > TRAVERSAL_WORK_PER_CHAR {
                    fail(acc, 7, format!("traversal work {} for n = {n}", stats.work()));
                }
                let peak = stats.peak_rlist as f64 / r as f64;
                acc.max_peak_ratio = acc.max_peak_ratio.max(peak);
                if peak > PEAK_RLIST_PER_RUN {
                    fail(acc, 8, format!("peak rlist {} for r = {r}", stats.peak_rlist));
                }
            }
            Ok(_) => {}
            Err(e) => fail(acc, 3, format!("{kind:?}: {e}")),
        }
        match check_net_and_mus(&t, &idx) {
            Ok(b) => {
                acc.max_net_ratio = acc.max_net_ratio.max(b.net_occurrences as f64 / r as f64);
                acc.max_mus_ratio = acc.max_mus_ratio.max(b.mus as f64 / r as f64);
                if !b.holds() {
                    fail(acc, 4, format!("{b:?}"));
                }
            }
            Err(e) => fail(acc, 3, format!("{kind:?}: {e}")),
        }
        if kind == MapperKind::Baseline {
            continue;
        }
        let bytes = idx.to_bytes();
        let back = match Index::from_bytes(&bytes) {
            Ok(b) => b,
            Err(e) => {
                fail(acc, 6, format!("reload: {e}"));
                continue;
            }
        };
        if back.to_bytes() != bytes {
            fail(acc, 6, "re-serialized index differs".into());
        }
        let oracle = Oracle::new(&t);
        let extra = non_substrings(&t, &oracle, rng);
        match check_nf_queries(&t, &back, MAX_PATTERN_LEN, &extra) {
            Ok(q) => {
                acc.queries += q.patterns;
                acc.max_query_ratio = acc.max_query_ratio.max(q.max_work_ratio);
                if q.max_work_ratio > QUERY_WORK_PER_SYMBOL {
                    fail(acc, 7, format!("query work ratio {:.2}", q.max_work_ratio));
                }
            }
            Err(e) => fail(acc, 6, e),
        }
        // spot check: the freshly built trie agrees with the reloaded one
        for p in extra.iter().take(20) {
            if idx.trie().nf_query(idx.mapper(), p) != back.trie().nf_query(back.mapper(), p) {
                fail(acc, 6, format!("reload changed nf({p:?})"));
            }
        }
    }
}

fn sweep() -> Sweep {
    let start = Instant::now();
    let mut acc = Sweep::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    for s in common::random_texts(RANDOM_TEXTS, MAX_N, 0x5eed)
        .iter()
        .chain(common::adversarial_texts().iter())
    {
        sweep_one(s, &mut acc, &mut rng);
    }
    acc.elapsed = start.elapsed();
    acc
}

fn summarize(acc: &Sweep, c: usize, detail: String) -> Result<String, String> {
    let f = &acc.failures[c];
    if f.is_empty() {
        Ok(detail)
    } else {
        let shown: Vec<&String> = f.iter().take(3).collect();
        Err(format!("{} failures, first: {shown:?}; {detail}", f.len()))
    }
}

struct Big {
    n: usize,
    r: usize,
    bytes: usize,
    peak_ratio: f64,
    elapsed: Duration,
}

fn big(copies: usize) -> Result<Big, String> {
    let raw = common::periodic_with_mutations(BIG_UNIT, copies, BIG_RATE, 8);
    let start = Instant::now();
    let t = encode_text(&raw).map_err(|e| e.to_string())?;
    let idx = Index::from_text(&t, IndexOptions::default()).map_err(|e| e.to_string())?;
    let stats = idx
        .engine()
        .traverse(&mut |_: &NodeReport<'_>, _: &[Child]| ControlFlow::Continue(()))
        .map_err(|e| e.to_string())?;
    let bytes = idx.to_bytes().len();
    Ok(Big {
        n: t.len(),
        r: idx.rlbwt().r(),
        bytes,
        peak_ratio: stats.peak_rlist as f64 / idx.rlbwt().r() as f64,
        elapsed: start.elapsed(),
    })
}

fn compressed_space(acc: &Sweep) -> Result<String, String> {
    let half = big(BIG_COPIES / 2)?;
    let full = big(BIG_COPIES)?;
    let ratio = full.bytes as f64 / half.bytes as f64;
    let peak = acc.max_peak_ratio.max(half.peak_ratio).max(full.peak_ratio);
    let detail = format!(
        "peak rlist <= {peak:.2} r (limit {PEAK_RLIST_PER_RUN}); n {} -> {}: r {} -> {}, \
         index {} -> {} bytes, ratio {ratio:.3} (limit {SIZE_DOUBLING_RATIO}); \
         build+enumerate at n = {}: {:.1?}",
        half.n, full.n, half.r, full.r, half.bytes, full.bytes, full.n, full.elapsed
    );
    ensure(acc.failures[8].is_empty(), || format!("{:?}; {detail}", &acc.failures[8][..1]))?;
    ensure(peak <= PEAK_RLIST_PER_RUN, || detail.clone())?;
    ensure(ratio < SIZE_DOUBLING_RATIO, || detail.clone())?;
    ensure(full.elapsed < BIG_TIME_LIMIT, || detail.clone())?;
    Ok(detail)
}

fn main() {
    let mut report = Report { failed: 0 };
    report.line(1, "golden tables", golden_tables());
    report.line(2, "golden classification", golden_classification());
    let acc = sweep();
    let texts = acc.texts;
    let mut c3 = summarize(
        &acc,
        3,
        format!("{texts} texts, both mappers, sweep took {:.1?}", acc.elapsed),
    );
    if c3.is_ok() && acc.elapsed >= SWEEP_TIME_LIMIT {
        c3 = Err(format!("sweep took {:.1?}", acc.elapsed));
    }
    report.line(3, "oracle equivalence sweep", c3);
    report.line(
        4,
        "2r bounds",
        summarize(
            &acc,
            4,
            format!(
                "max net/r {:.3}, max MUS/r {:.3}, boundary rows checked",
                acc.max_net_ratio, acc.max_mus_ratio
            ),
        ),
    );
    report.line(
        5,
        "mapper equivalence and balance",
        summarize(
            &acc,
            5,
            format!(
                "max scan {} (limit {BALANCE}), max move intervals/r {:.3} (limit {MOVE_INTERVALS_PER_RUN})",
                acc.max_scan, acc.max_hat_ratio
            ),
        ),
    );
    report.line(
        6,
        "NF-query correctness",
        summarize(&acc, 6, format!("{} queries after reload", acc.queries)),
    );
    report.line(
        7,
        "linear-work instrumentation",
        summarize(
            &acc,
            7,
            format!(
                "max traversal work/n {:.3} (limit {TRAVERSAL_WORK_PER_CHAR}), \
                 max query work/(|P|+1) {:.3} (limit {QUERY_WORK_PER_SYMBOL})",
                acc.max_work_ratio, acc.max_query_ratio
            ),
        ),
    );
    report.line(8, "compressed-space proxy", compressed_space(&acc));
    if report.failed > 0 {
        println!("{} criteria failed", report.failed);
        std::process::exit(1);
    }
    println!("all criteria passed");
}

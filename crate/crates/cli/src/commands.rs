use std::io::{BufWriter, Write};
use std::ops::ControlFlow;

use anyhow::Context;
use serde::Serialize;

use rle_repeats::index::{Index, IndexOptions};
use rle_repeats::mapping::{spell, MapperKind};
use rle_repeats::net::{all_net_occurrences, mus_from_net_occurrences};
use rle_repeats::nftrie::ChildLookupKind;
use rle_repeats::renum::{Child, NodeReport};
use rle_repeats::rlbwt::{Rlbwt, RLBWT_MAGIC};
use rle_repeats::text::encode_text;
use rle_repeats::verify::verify_text;
use rle_repeats::Classes;

use crate::output::{parse_pattern, render, tsv_line, Pattern};
use crate::{
    BuildArgs, Command, EnumerateArgs, Failure, Format, ListArgs, LookupArg, MapperArg, QueryArgs,
    StatsArgs, VerifyArgs,
};

/// Largest text accepted by `verify`; the oracle is quadratic in places.
const VERIFY_MAX_LEN: usize = 100_000;

pub fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Build(a) => build(a),
        Command::Enumerate(a) => enumerate(a),
        Command::AllNf(a) => all_nf(a),
        Command::Mus(a) => mus(a),
        Command::NfQuery(a) => nf_query(a),
        Command::Stats(a) => stats(a),
        Command::Verify(a) => verify(a),
    }
}

fn load(path: &std::path::Path) -> Result<Index, Failure> {
    Index::load(path)
        .with_context(|| format!("reading index {}", path.display()))
        .map_err(Failure::Data)
}

fn stdout() -> BufWriter<std::io::StdoutLock<'static>> {
    BufWriter::new(std::io::stdout().lock())
}

fn json_line(out: &mut impl Write, v: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, v).map_err(anyhow::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn build(a: BuildArgs) -> Result<(), Failure> {
    let (rl, alphabet) = if let Some(p) = &a.input.text {
        let raw = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
        let t = encode_text(&raw)?;
        (Rlbwt::from_text(&t), t.alphabet())
    } else {
        let p = a.input.rlbwt.as_ref().expect("clap enforces one input");
        let bytes = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
        let rl = if bytes.starts_with(RLBWT_MAGIC) {
            Rlbwt::from_bytes(&bytes)?
        } else {
            let src = std::str::from_utf8(&bytes).context("RLBWT text form is not UTF-8")?;
            Rlbwt::from_text_format(src)?
        };
        rl.validate()?;
        (rl, None)
    };
    let opts = IndexOptions {
        mapper: match a.mapper {
            MapperArg::Move => MapperKind::Move,
            MapperArg::Baseline => MapperKind::Baseline,
        },
        balance: a.balance as usize,
        with_nocc: a.with_nocc,
        lookup: match a.lookup {
            LookupArg::Hashed => ChildLookupKind::Hashed,
            LookupArg::Sorted => ChildLookupKind::Sorted,
        },
    };
    let idx = Index::build(rl, alphabet, opts)?;
    idx.save(&a.out)
        .with_context(|| format!("writing {}", a.out.display()))?;
    eprintln!(
        "n = {}, r = {}, trie nodes = {}",
        idx.rlbwt().n(),
        idx.rlbwt().r(),
        idx.trie().node_count()
    );
    Ok(())
}

#[derive(Serialize)]
struct NodeRow {
    length: usize,
    occ: usize,
    lc: usize,
    rc: usize,
    classes: Vec<String>,
    nf: usize,
    nocc: Vec<usize>,
    string: Option<String>,
}

fn joined(v: &[usize]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn enumerate(a: EnumerateArgs) -> Result<(), Failure> {
    let filter = match &a.classes {
        Some(s) => Classes::parse_list(s)
            .ok_or_else(|| Failure::Usage(format!("unknown class in {s:?} (use lmr,rmr,mr,nsmr,smr)")))?,
        None => Classes::NONE,
    };
    let idx = load(&a.index)?;
    let mut out = stdout();
    if a.format == Format::Tsv {
        writeln!(out, "#length\tocc\tlc\trc\tclasses\tnf\tnocc\tstring")?;
    }
    let mut failed: Option<Failure> = None;
    let res = idx.engine().traverse(&mut |n: &NodeReport<'_>, _: &[Child]| {
        if filter != Classes::NONE && !n.classes.intersects(filter) {
            return ControlFlow::Continue(());
        }
        let string = a
            .materialize
            .then(|| render(idx.alphabet(), &spell(idx.mapper(), n.witness(), n.depth)));
        let written = match a.format {
            Format::Tsv => tsv_line(
                &mut out,
                &[
                    n.depth.to_string(),
                    n.occ_count().to_string(),
                    n.lc_size.to_string(),
                    n.rc_size.to_string(),
                    n.classes.to_string(),
                    n.nf().to_string(),
                    joined(n.net_occurrences),
                    string.unwrap_or_else(|| "-".into()),
                ],
            )
            .map_err(Failure::from),
            Format::Json => json_line(
                &mut out,
                &NodeRow {
                    length: n.depth,
                    occ: n.occ_count(),
                    lc: n.lc_size,
                    rc: n.rc_size,
                    classes: n.classes.to_string().split(',').filter(|c| *c != "-").map(String::from).collect(),
                    nf: n.nf(),
                    nocc: n.net_occurrences.to_vec(),
                    string,
                },
            ),
        };
        match written {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                failed = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    if let Some(e) = failed {
        return Err(e);
    }
    res?;
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct NetRow {
    start: usize,
    length: usize,
    pattern: Option<String>,
    nf: usize,
}

fn all_nf(a: ListArgs) -> Result<(), Failure> {
    let idx = load(&a.index)?;
    let occs = all_net_occurrences(&idx.engine(), !a.no_epsilon)?;
    let mut out = stdout();
    if a.format == Format::Tsv {
        writeln!(out, "#start\tlength\tpattern\tnf")?;
    }
    for o in occs {
        let pattern = a
            .materialize
            .then(|| render(idx.alphabet(), &spell(idx.mapper(), o.p, o.len)));
        match a.format {
            Format::Tsv => tsv_line(
                &mut out,
                &[
                    o.start.to_string(),
                    o.len.to_string(),
                    pattern.unwrap_or_else(|| "-".into()),
                    o.nf.to_string(),
                ],
            )?,
            Format::Json => json_line(
                &mut out,
                &NetRow {
                    start: o.start,
                    length: o.len,
                    pattern,
                    nf: o.nf,
                },
            )?,
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct MusRow {
    start: usize,
    end: usize,
    string: Option<String>,
}

fn mus(a: ListArgs) -> Result<(), Failure> {
    let idx = load(&a.index)?;
    let occs = all_net_occurrences(&idx.engine(), true)?;
    let mus = mus_from_net_occurrences(&occs, idx.rlbwt().n());
    let text = a.materialize.then(|| idx.rlbwt().invert());
    let mut out = stdout();
    if a.format == Format::Tsv {
        writeln!(out, "#start\tend\tstring")?;
    }
    for (b, e) in mus {
        let string = text.as_ref().map(|t| render(idx.alphabet(), &t[b - 1..e]));
        match a.format {
            Format::Tsv => tsv_line(
                &mut out,
                &[b.to_string(), e.to_string(), string.unwrap_or_else(|| "-".into())],
            )?,
            Format::Json => json_line(&mut out, &MusRow { start: b, end: e, string })?,
        }
    }
    out.flush()?;
    Ok(())
}

fn thread_cap() -> Result<usize, Failure> {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var("RLE_REPEATS_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k.min(available)),
            _ => Err(Failure::Usage(format!(
                "RLE_REPEATS_THREADS must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(available),
    }
}

#[derive(Serialize)]
struct QueryRow<'a> {
    pattern: &'a str,
    nf: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    nocc: Option<&'a [usize]>,
}

fn read_patterns(a: &QueryArgs, idx: &Index) -> Result<Vec<Pattern>, Failure> {
    let raw: Vec<Vec<u8>> = if let Some(p) = &a.source.pattern {
        vec![os_bytes(p)]
    } else {
        let path = a.source.patterns_file.as_ref().expect("clap enforces one source");
        let data = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let mut lines: Vec<Vec<u8>> = data.split(|&b| b == b'\n').map(<[u8]>::to_vec).collect();
        if lines.last().is_some_and(|l| l.is_empty()) {
            lines.pop();
        }
        lines
    };
    raw.iter()
        .map(|r| parse_pattern(r, a.hex, idx.alphabet(), idx.rlbwt().sigma()).map_err(Failure::Usage))
        .collect()
}

#[cfg(unix)]
fn os_bytes(s: &std::ffi::OsStr) -> Vec<u8> {
    use std::os::unix::ffi::OsStrExt;
    s.as_bytes().to_vec()
}

#[cfg(not(unix))]
fn os_bytes(s: &std::ffi::OsStr) -> Vec<u8> {
    s.to_string_lossy().into_owned().into_bytes()
}

fn nf_query(a: QueryArgs) -> Result<(), Failure> {
    let idx = load(&a.index)?;
    if a.nocc && !idx.trie().stores_nocc() {
        return Err(Failure::Usage(
            "--nocc needs an index built with --with-nocc".into(),
        ));
    }
    let patterns = read_patterns(&a, &idx)?;
    let threads = thread_cap()?.min(patterns.len()).max(1);
    let chunk = patterns.len().div_ceil(threads).max(1);
    let answer = |p: &Pattern, buf: &mut Vec<u32>| -> rle_repeats::Result<(usize, Vec<usize>)> {
        let Some(s) = &p.symbols else {
            return Ok((0, Vec::new()));
        };
        let nf = idx.trie().nf_query_traced(idx.mapper(), s, buf).nf;
        let nocc = if a.nocc {
            idx.trie().nocc_query(idx.mapper(), s)?
        } else {
            Vec::new()
        };
        Ok((nf, nocc))
    };
    let results: Vec<rle_repeats::Result<(usize, Vec<usize>)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = patterns
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut buf = Vec::new();
                    part.iter().map(|p| answer(p, &mut buf)).collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("query thread panicked"))
            .collect()
    });
    let mut out = stdout();
    for (p, r) in patterns.iter().zip(results) {
        let (nf, nocc) = r?;
        match a.format {
            Format::Tsv => {
                let mut fields = vec![p.shown.clone(), nf.to_string()];
                if a.nocc {
                    fields.push(joined(&nocc));
                }
                tsv_line(&mut out, &fields)?;
            }
            Format::Json => json_line(
                &mut out,
                &QueryRow {
                    pattern: &p.shown,
                    nf,
                    nocc: a.nocc.then_some(nocc.as_slice()),
                },
            )?,
        }
    }
    out.flush()?;
    Ok(())
}

fn stats(a: StatsArgs) -> Result<(), Failure> {
    let idx = load(&a.index)?;
    let file_bytes = std::fs::metadata(&a.index)?.len();
    let rl = idx.rlbwt();
    let occs = all_net_occurrences(&idx.engine(), true)?;
    let mus = mus_from_net_occurrences(&occs, rl.n());
    let trie = idx.trie();
    let nf_epsilon = trie.node(trie.root()).nf;
    let nsmr = trie.nsmr_count() - usize::from(nf_epsilon > 0);
    let two_r = 2 * rl.r();
    let rows: Vec<(&str, String)> = vec![
        ("n", rl.n().to_string()),
        ("r", rl.r().to_string()),
        ("sigma", rl.sigma().to_string()),
        (
            "mapper",
            match idx.mapper().kind() {
                MapperKind::Move => "move".into(),
                MapperKind::Baseline => "baseline".into(),
            },
        ),
        ("balance", idx.balance().to_string()),
        ("move_intervals", idx.mapper_intervals().to_string()),
        ("nsmr", nsmr.to_string()),
        ("nf_epsilon", nf_epsilon.to_string()),
        ("trie_nodes", trie.node_count().to_string()),
        ("net_occurrences", occs.len().to_string()),
        ("mus", mus.len().to_string()),
        ("two_r", two_r.to_string()),
        ("net_margin", (two_r as i64 - occs.len() as i64).to_string()),
        ("mus_margin", (two_r as i64 - mus.len() as i64).to_string()),
        ("index_bytes", file_bytes.to_string()),
    ];
    let mut out = stdout();
    match a.format {
        Format::Tsv => {
            for (k, v) in rows {
                writeln!(out, "{k}\t{v}")?;
            }
        }
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = rows
                .into_iter()
                .map(|(k, v)| {
                    let val = v
                        .parse::<i64>()
                        .map_or(serde_json::Value::String(v), serde_json::Value::from);
                    (k.to_string(), val)
                })
                .collect();
            json_line(&mut out, &map)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let raw = std::fs::read(&a.text).with_context(|| format!("reading {}", a.text.display()))?;
    let t = encode_text(&raw)?;
    if t.len() > VERIFY_MAX_LEN {
        return Err(Failure::Usage(format!(
            "verify runs a quadratic oracle; text has {} symbols, limit is {VERIFY_MAX_LEN}",
            t.len()
        )));
    }
    match verify_text(&t, a.balance as usize) {
        Ok(log) => {
            for l in log {
                println!("{l}");
            }
            println!("ok");
            Ok(())
        }
        Err(e) => Err(Failure::Verify(e)),
    }
}


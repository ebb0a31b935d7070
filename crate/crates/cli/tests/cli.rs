use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rle-repeats"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Fixture {
        Fixture {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, data: &[u8]) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, data).unwrap();
        p
    }

    /// Builds an index over `text` and returns its path.
    fn index(&self, text: &[u8], extra: &[&str]) -> PathBuf {
        let t = self.write("text", text);
        let idx = self.path("index");
        let mut args = vec!["build", "--text", s(&t), "--out", s(&idx)];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        idx
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const RUNNING: &[u8] = b"abcbbcbcabc";

#[test]
fn nf_query_running_example() {
    let f = Fixture::new();
    let idx = f.index(RUNNING, &[]);
    let o = run(&["nf-query", "--index", s(&idx), "--pattern", "abc"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "abc\t2\n");
    let o = run(&["nf-query", "--index", s(&idx), "--pattern", "616263", "--hex"]);
    assert_eq!(stdout(&o), "616263\t2\n");
}

#[test]
fn patterns_file_with_threads() {
    let f = Fixture::new();
    let idx = f.index(RUNNING, &["--with-nocc", "--lookup", "sorted"]);
    let pats = f.write("pats", b"bc\nabc\nbcb\ncb\nxyz\nabcb\n");
    let o = bin()
        .args(["nf-query", "--index", s(&idx), "--patterns-file", s(&pats), "--nocc"])
        .env("RLE_REPEATS_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "bc\t1\t7\nabc\t2\t1,9\nbcb\t2\t2,5\ncb\t0\t-\nxyz\t0\t-\nabcb\t0\t-\n"
    );
    let o = bin()
        .args(["nf-query", "--index", s(&idx), "--patterns-file", s(&pats)])
        .env("RLE_REPEATS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn enumerate_reproduces_concept_table() {
    let f = Fixture::new();
    for mapper in ["move", "baseline"] {
        let idx = f.index(RUNNING, &["--mapper", mapper]);
        let o = run(&["enumerate", "--index", s(&idx), "--materialize"]);
        assert_eq!(code(&o), 0);
        let want = "\
#length\tocc\tlc\trc\tclasses\tnf\tnocc\tstring
0\t12\t4\t4\tLMR,RMR,MR\t0\t-\t
1\t5\t3\t2\tLMR,RMR,MR\t0\t-\tb
1\t4\t1\t3\tRMR\t0\t-\tc
2\t4\t3\t3\tLMR,RMR,MR,NSMR\t1\t7\tbc
2\t2\t1\t2\tRMR\t0\t-\tcb
3\t2\t2\t2\tLMR,RMR,MR,NSMR,SMR\t2\t1,9\tabc
3\t2\t2\t2\tLMR,RMR,MR,NSMR,SMR\t2\t2,5\tbcb
";
        assert_eq!(stdout(&o), want);
    }
}

#[test]
fn enumerate_json_and_filter() {
    let f = Fixture::new();
    let idx = f.index(RUNNING, &[]);
    let o = run(&["enumerate", "--index", s(&idx), "--classes", "nsmr", "--format", "json", "--materialize"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let names: Vec<&str> = rows.iter().map(|r| r["string"].as_str().unwrap()).collect();
    assert_eq!(names, ["bc", "abc", "bcb"]);
    assert_eq!(rows[1]["nocc"], serde_json::json!([1, 9]));
    let o = run(&["enumerate", "--index", s(&idx), "--classes", "bogus"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn stats_running_example() {
    let f = Fixture::new();
    let idx = f.index(RUNNING, &[]);
    let o = run(&["stats", "--index", s(&idx)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let get = |k: &str| -> usize {
        out.lines()
            .find_map(|l| l.strip_prefix(&format!("{k}\t")))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert_eq!((get("n"), get("r"), get("sigma")), (12, 7, 4));
    assert_eq!(get("net_occurrences"), 5);
    assert!(get("net_occurrences") < get("two_r"));
    assert_eq!((get("nsmr"), get("mus")), (3, 5));
}

#[test]
fn mus_and_all_nf() {
    let f = Fixture::new();
    let idx = f.index(b"ab", &[]);
    let o = run(&["mus", "--index", s(&idx)]);
    assert_eq!(stdout(&o), "#start\tend\tstring\n1\t1\t-\n2\t2\t-\n3\t3\t-\n");
    let o = run(&["all-nf", "--index", s(&idx)]);
    assert_eq!(stdout(&o), "#start\tlength\tpattern\tnf\n1\t0\t-\t3\n2\t0\t-\t3\n3\t0\t-\t3\n");
    let o = run(&["all-nf", "--index", s(&idx), "--no-epsilon"]);
    assert_eq!(stdout(&o), "#start\tlength\tpattern\tnf\n");
    let o = run(&["nf-query", "--index", s(&idx), "--pattern", ""]);
    assert_eq!(stdout(&o), "\t3\n");

    let idx = f.index(RUNNING, &[]);
    let o = run(&["mus", "--index", s(&idx), "--materialize", "--format", "json"]);
    let first: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first, serde_json::json!({"start": 1, "end": 4, "string": "abcb"}));
}

#[test]
fn escaped_output() {
    let f = Fixture::new();
    let idx = f.index(b"a\tb\xffa\tb\xff", &[]);
    let o = run(&["all-nf", "--index", s(&idx), "--materialize"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("a\\tb\\xff"), "{}", stdout(&o));
}

#[test]
fn rlbwt_text_input_uses_symbol_ids() {
    let f = Fixture::new();
    let rl = f.write("rl.txt", b"12 7 4\n4 2\n1 1\n4 1\n2 1\n4 1\n2 1\n3 5\n");
    let idx = f.path("idx");
    let o = run(&["build", "--rlbwt", s(&rl), "--out", s(&idx)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["nf-query", "--index", s(&idx), "--pattern", "2,3,4"]);
    assert_eq!(stdout(&o), "2,3,4\t2\n");
    let o = run(&["nf-query", "--index", s(&idx), "--pattern", "abc"]);
    assert_eq!(code(&o), 1);
    let bad = f.write("bad.txt", b"12 7 4\n4 2\n1 1\n");
    let o = run(&["build", "--rlbwt", s(&bad), "--out", s(&idx)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn exit_codes() {
    let f = Fixture::new();
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["build", "--out", "x"])), 1);
    assert_eq!(code(&run(&["build", "--text", "a", "--rlbwt", "b", "--out", "x"])), 1);
    assert_eq!(code(&run(&["build", "--text", "x", "--out", "y", "--balance", "1"])), 1);
    let missing = f.path("missing");
    assert_eq!(code(&run(&["stats", "--index", s(&missing)])), 2);
    let junk = f.write("junk", b"not an index");
    let o = run(&["stats", "--index", s(&junk)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad magic"));
    let nul = f.write("nul", b"a\0b");
    assert_eq!(code(&run(&["build", "--text", s(&nul), "--out", s(&f.path("o"))])), 2);
    let idx = f.index(RUNNING, &[]);
    let o = run(&["nf-query", "--index", s(&idx), "--pattern", "a", "--nocc"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_accepts_small_texts() {
    let f = Fixture::new();
    for (i, text) in [RUNNING, b"mississippi", b"aaaaaaaa", b"x"].iter().enumerate() {
        let t = f.write(&format!("t{i}"), text);
        let o = run(&["verify", "--text", s(&t)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).ends_with("ok\n"));
    }
}

#[test]
fn outputs_are_deterministic() {
    let f = Fixture::new();
    let text = b"the quick brown fox jumps over the lazy dog; the quick dog";
    let idx = f.index(text, &[]);
    let first = std::fs::read(&idx).unwrap();
    let idx = f.index(text, &[]);
    assert_eq!(std::fs::read(&idx).unwrap(), first);
    let pats = f.write("pats", b"the\nquick\n q\nzzz\n\n");
    for args in [
        vec!["enumerate", "--index", s(&idx)],
        vec!["enumerate", "--index", s(&idx), "--format", "json", "--materialize"],
        vec!["all-nf", "--index", s(&idx)],
        vec!["mus", "--index", s(&idx)],
        vec!["stats", "--index", s(&idx)],
        vec!["nf-query", "--index", s(&idx), "--patterns-file", s(&pats)],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(code(&a), 0, "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

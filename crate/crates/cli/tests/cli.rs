use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn augms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_augms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, content: &[u8]) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, content).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn abracadabra_index(dir: &TempDir, encoding: &str) -> PathBuf {
    let text = file(dir, "text.fa", b">t\nabracadabra\n");
    let idx = dir.path().join(format!("{encoding}.idx"));
    let o = augms(&["build", s(&text), "-o", s(&idx), "--encoding", encoding]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    idx
}

#[test]
fn ms_output() {
    let dir = TempDir::new().unwrap();
    let idx = abracadabra_index(&dir, "full");
    let pats = file(&dir, "p.txt", b"abra\nzzzz\n");
    for mode in ["augmented", "baseline"] {
        let o = augms(&["query", s(&idx), s(&pats), "--ms", "--mode", mode]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), "8:4 9:3 10:2 11:1\n-:0 -:0 -:0 -:0\n");
    }
}

#[test]
fn mem_output() {
    let dir = TempDir::new().unwrap();
    let idx = abracadabra_index(&dir, "dac");
    let pats = file(&dir, "p.fa", b">q1\nadra\n");
    let o = augms(&["query", s(&idx), s(&pats), "--mems", "--min-len", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "q1 1 6 2\nq1 3 10 2\n");
}

#[test]
fn threads_do_not_change_output() {
    let dir = TempDir::new().unwrap();
    let text = dir.path().join("pan.fa");
    let pats = dir.path().join("pats.fa");
    let o = augms(&[
        "simulate", "-o", s(&text), "--seed-len", "2000", "--copies", "4", "--patterns-out", s(&pats),
        "--patterns", "40", "--pattern-len", "100",
    ]);
    assert!(o.status.success());
    let idx = dir.path().join("pan.idx");
    assert!(augms(&["build", s(&text), "-o", s(&idx), "--lce", "lcp-rmq", "--thresholds", "sigma-bv"]).status.success());
    let one = augms(&["query", s(&idx), s(&pats), "--ms", "--verify"]);
    let four = augms(&["query", s(&idx), s(&pats), "--ms", "--threads", "4"]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(stdout(&one), stdout(&four));
    assert_eq!(stdout(&one).lines().count(), 40);
}

fn build_report(o: &Output) -> Vec<(String, String)> {
    stdout(o)
        .lines()
        .map(|l| {
            let (k, v) = l.split_once('\t').unwrap();
            (k.to_string(), v.to_string())
        })
        .collect()
}

fn field(report: &[(String, String)], key: &str) -> usize {
    report.iter().find(|(k, _)| k == key).unwrap().1.parse().unwrap()
}

#[test]
fn build_reports_sizes_and_compression() {
    let dir = TempDir::new().unwrap();
    let text = dir.path().join("pan.fa");
    assert!(augms(&["simulate", "-o", s(&text), "--seed-len", "10000", "--copies", "16"]).status.success());
    let idx = dir.path().join("pan.idx");
    let o = augms(&["build", s(&text), "-o", s(&idx), "--encoding", "phoni"]);
    assert!(o.status.success());
    let report = build_report(&o);
    let (n, r) = (field(&report, "n"), field(&report, "r"));
    assert!(r * 5 < n, "n = {n}, r = {r}");
    assert_eq!(field(&report, "threshold_lces_bytes"), 0);
    let sections: usize = ["header", "runs", "samples", "thresholds", "threshold_lces", "lce_backend"]
        .iter()
        .map(|k| field(&report, &format!("{k}_bytes")))
        .sum();
    assert_eq!(sections, field(&report, "total_bytes"));
    assert_eq!(sections as u64, fs::metadata(&idx).unwrap().len());
}

#[test]
fn bench_csv() {
    let dir = TempDir::new().unwrap();
    let text = dir.path().join("pan.fa");
    let pats = dir.path().join("pats.fa");
    assert!(augms(&[
        "simulate", "-o", s(&text), "--seed-len", "5000", "--copies", "8", "--patterns-out", s(&pats),
        "--patterns", "30", "--pattern-len", "300",
    ])
    .status
    .success());
    let csv = dir.path().join("bench.csv");
    let o = augms(&["bench", s(&text), s(&pats), "--csv", s(&csv), "--repeats", "3", "--lce", "naive,lcp-rmq"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let content = fs::read_to_string(&csv).unwrap();
    let mut lines = content.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 14);
    let checksum = col("ms_checksum");
    assert!(rows.iter().all(|r| r[checksum] == rows[0][checksum]));
    let calls = col("lce_calls");
    let calls_of = |r: &Vec<&str>| r[calls].parse::<u64>().unwrap();
    for block in rows.chunks(7) {
        assert_eq!(block[0][col("variant")], "phoni");
        assert!(block[1..].iter().all(|r| calls_of(r) < calls_of(&block[0])));
    }
    assert!(rows.iter().all(|r| r[col("repeats")] == "3"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let empty = file(&dir, "empty.fa", b">nothing\n");
    let idx = dir.path().join("x.idx");
    assert_eq!(augms(&["build", s(&empty), "-o", s(&idx)]).status.code(), Some(2));
    let reserved = file(&dir, "bad.txt", b"AC\x00GT");
    assert_eq!(augms(&["build", s(&reserved), "-o", s(&idx)]).status.code(), Some(2));
    assert_eq!(augms(&["build"]).status.code(), Some(1));
    assert_eq!(augms(&["build", s(&empty), "-o", s(&idx), "--encoding", "huge"]).status.code(), Some(1));
    let pats = file(&dir, "p.txt", b"AC\n");
    assert_eq!(augms(&["query", s(&idx), s(&pats), "--ms"]).status.code(), Some(2));
    let good = abracadabra_index(&dir, "byte");
    assert_eq!(augms(&["query", s(&good), s(&pats)]).status.code(), Some(1));
    assert_eq!(augms(&["query", s(&good), s(&pats), "--ms", "--mems", "--min-len", "2"]).status.code(), Some(1));
    assert_eq!(augms(&["bench", s(&empty), s(&pats), "--repeats", "0"]).status.code(), Some(1));
    assert_eq!(augms(&["bench", s(&empty), s(&pats), "--variants", "full,full"]).status.code(), Some(1));
    let corrupt = file(&dir, "corrupt.idx", b"AUGMSIDX\x02\x00\x00\x00");
    let o = augms(&["query", s(&corrupt), s(&pats), "--ms"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("version"));
    assert!(augms(&["--help"]).status.success());
}

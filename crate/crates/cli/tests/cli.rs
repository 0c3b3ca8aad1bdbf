use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tribcensus"))
        .args(args)
        .env_remove("TRIBCENSUS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn records<'a>(text: &'a str, kind: &str) -> Vec<&'a str> {
    let prefix = format!("record:{kind}\t");
    text.lines().filter(|l| l.starts_with(&prefix)).collect()
}

fn without_wall_time(text: &str) -> String {
    text.lines()
        .map(|l| l.split('\t').filter(|f| !f.starts_with("wall_time:")).collect::<Vec<_>>().join("\t"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn count_record() {
    let out = run(&["count", "--params", "1,1,1", "--k", "4", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rec = records(&text, "count");
    assert_eq!(rec, ["record:count\tparams:1,1,1\tk:4\tn:5\tcount:6"]);
    let manifest = records(&text, "manifest");
    assert_eq!(manifest.len(), 1);
    for key in ["command:", "params:1,1,1", "version:", "precision_bits:128", "digest:", "wall_time:"] {
        assert!(manifest[0].contains(key), "{key} missing from {}", manifest[0]);
    }
}

#[test]
fn threshold_at_seven() {
    let out = run(&["threshold", "--params", "1,1,1", "--k", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rec = records(&text, "threshold");
    assert_eq!(rec.len(), 1);
    assert!(rec[0].contains("\texact:26\t"));
    assert!(rec[0].contains("\tbound:120.18"));
    assert!(rec[0].contains("\tpass:true"));
}

#[test]
fn spectral_tables() {
    let out = run(&["spectral", "--params", "1,1,1", "--verify-tables"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows = records(&text, "table_row");
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.ends_with("pass:true")));
    // reals carry a radius
    assert!(records(&text, "spectral")[0].contains("delta:2.176"));
    assert!(records(&text, "spectral")[0].contains('±'));
}

#[test]
fn deterministic_across_runs_and_threads() {
    let a = run(&["scan-max-p", "--n", "3..3000", "--each"]);
    let b = run(&["scan-max-p", "--n", "3..3000", "--each"]);
    assert_eq!(without_wall_time(&stdout(&a)), without_wall_time(&stdout(&b)));
    let c = run(&["scan-max-p", "--n", "3..3000", "--each", "--threads", "4"]);
    let body = |s: String| s.lines().filter(|l| !l.starts_with("record:manifest")).collect::<Vec<_>>().join("\n");
    assert_eq!(body(stdout(&a)), body(stdout(&c)));
    let digest = |s: &str| records(s, "manifest")[0].split('\t').find(|f| f.starts_with("digest:")).unwrap().to_string();
    assert_eq!(digest(&stdout(&a)), digest(&stdout(&c)));
}

#[test]
fn tsv_output_to_file() {
    let dir = std::env::temp_dir().join(format!("tribcensus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("basis.tsv");
    let out = run(&["basis", "--k", "4..7", "--format", "tsv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "#basis\tparams\tk\tp\tq\tr");
    assert_eq!(lines[4], "basis\t1,1,1\t7\t4\t6\t7");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count", "--k", "x", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobenius", "--triple", "4,6,8"]).status.code(), Some(2));
    assert_eq!(run(&["threshold", "--k", "40"]).status.code(), Some(3));
    // no null vector with a zero-width search
    let out = run(&["null-vector", "--n", "12", "--pattern", "A", "--box", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("found:false"));
}

#[test]
fn other_subcommands() {
    let text = stdout(&run(&["frobenius", "--params", "1,1,1", "--k", "7"]));
    assert!(text.contains("frobenius:9\tpositive_frobenius:26"));
    let text = stdout(&run(&["null-vector", "--n", "12", "--pattern", "B"]));
    assert!(text.contains("sequence:(-13,12,-3,-4,5,-2,-1,2,-1,0,1,0)"));
    let text = stdout(&run(&["affable", "--params", "1,2,1"]));
    assert!(text.contains("affable:true"));
    let text = stdout(&run(&["noncongenial", "--t", "1..2"]));
    assert_eq!(records(&text, "family").len(), 2);
    assert!(records(&text, "family").iter().all(|r| r.ends_with("strictly_increasing:true")));
    let text = stdout(&run(&["tn", "--n", "5970"]));
    assert!(text.contains("n:5970\tt:12"));
}

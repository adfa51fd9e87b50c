use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use omega_synth::automata::{degeneralize, emit_hoa, parse_hoa};
use omega_synth::expr::{parse_omega, Measure};
use omega_synth::oracle::random_nba;
use omega_synth_cli::bench::{from_csv, Status};
use omega_synth_cli::commands::SynthOutput;
use omega_synth_cli::TIMEOUT_ENV;

const GOLDEN: &str = "(a+ba*b)((c)*da*b)^w+(b+ac*d)((a)*bc*d)^w";

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega-synth"))
        .args(args)
        .env_remove(TIMEOUT_ENV)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn metric(line: &str, key: &str) -> u64 {
    let rest = &line[line.find(key).unwrap() + key.len()..];
    rest.split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn synth_golden() {
    let o = run(&["synth", path(&fixture("b1.hoa"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some(GOLDEN));
    assert!(out.contains("rpn: 39  tllen: 7"), "{out}");
}

#[test]
fn json_input_matches_hoa() {
    let o = run(&["synth", path(&fixture("b1.json"))]);
    assert_eq!(stdout(&o).lines().next(), Some(GOLDEN));
}

#[test]
fn simplify_never_grows_rpn() {
    let out = stdout(&run(&[
        "synth",
        path(&fixture("b1.hoa")),
        "--simplify",
        "--method",
        "state",
    ]));
    let simplified = out.lines().find(|l| l.starts_with("rpn:")).unwrap();
    let raw = out.lines().find(|l| l.starts_with("unsimplified")).unwrap();
    assert!(metric(simplified, "rpn: ") <= metric(raw, "rpn: "), "{out}");
}

#[test]
fn transition_route_is_smaller_on_b1() {
    let rpn = |method| {
        let out = stdout(&run(&["synth", path(&fixture("b1.hoa")), "--method", method]));
        metric(out.lines().find(|l| l.starts_with("rpn:")).unwrap(), "rpn: ")
    };
    assert!(rpn("transition") <= rpn("state"));
}

#[test]
fn empty_language_marker() {
    let o = run(&["synth", path(&fixture("empty.hoa"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(
        out.lines().take(2).collect::<Vec<_>>(),
        ["%0^w", "empty language"]
    );
}

#[test]
fn json_output_round_trips() {
    let o = run(&[
        "synth",
        path(&fixture("b1.hoa")),
        "--format",
        "json",
        "--simplify",
    ]);
    let doc: SynthOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.method, "transition");
    assert!(doc.unsimplified_metrics.is_some());
    let b = parse_hoa(&fs::read_to_string(fixture("b1.hoa")).unwrap()).unwrap();
    let mut ab = b.alphabet().clone();
    let e = parse_omega(&doc.expression, &mut ab).unwrap();
    assert_eq!(ab.len(), b.alphabet().len());
    assert_eq!(e.metrics(), doc.metrics);
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", path(&fixture("b1.hoa"))]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("equal:"));

    let bad = run(&[
        "verify",
        path(&fixture("b1_mutated.hoa")),
        "--against",
        path(&fixture("b1.hoa")),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(
        stdout(&bad).contains("counterexample: u=\"a\" v=\"c\""),
        "{}",
        stdout(&bad)
    );

    let expr = run(&["verify", path(&fixture("b1.hoa")), "--against", GOLDEN]);
    assert_eq!(expr.status.code(), Some(0));
    let wrong = run(&["verify", path(&fixture("b1.hoa")), "--against", "(a)^w"]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn triplet_dump() {
    let o = run(&["triplet", path(&fixture("b1.hoa")), "1", "1", "rej"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("HOA: v1") && out.contains("--END--"), "{out}");

    let bad = run(&["triplet", path(&fixture("b1.hoa")), "9", "0", "all"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(run(&["synth"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", path(&fixture("b1.hoa")), "--bounds", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["synth", "/nonexistent.hoa"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.hoa");
    fs::write(&junk, "HOA: v1\nStates: ").unwrap();
    assert_eq!(run(&["synth", path(&junk)]).status.code(), Some(3));
}

#[test]
fn timeouts_exit_4() {
    let o = run(&["synth", path(&fixture("b1.hoa")), "--timeout", "0"]);
    assert_eq!(o.status.code(), Some(4));
    let o = Command::new(env!("CARGO_BIN_EXE_omega-synth"))
        .args(["verify", path(&fixture("b1.hoa"))])
        .env(TIMEOUT_ENV, "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn sequential_flag_gives_same_output() {
    let a = stdout(&run(&["synth", path(&fixture("b1.hoa"))]));
    let b = stdout(&run(&["--sequential", "synth", path(&fixture("b1.hoa"))]));
    assert_eq!(a.lines().next(), b.lines().next());
}

#[test]
fn bench_rows_and_error_rows() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c");
    let o = run(&["gen-corpus", path(&corpus), "--count", "20", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    fs::write(corpus.join("broken.hoa"), "HOA: v1\n--BODY--").unwrap();
    let csv = dir.path().join("out.csv");
    let o = run(&["bench", path(&corpus), "--out", path(&csv)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = from_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    // 21 files × 2 methods × {raw, simplified}
    assert_eq!(rows.len(), 84);
    let broken: Vec<_> = rows.iter().filter(|r| r.file.contains("broken")).collect();
    assert_eq!(broken.len(), 4);
    assert!(broken
        .iter()
        .all(|r| r.status == Status::Error && r.rpn.is_none()));
    assert!(rows
        .iter()
        .filter(|r| !r.file.contains("broken"))
        .all(|r| r.status == Status::Ok));
    assert!(stdout(&o).contains("mean rpn: transition"));
}

#[test]
fn bench_pairs_tba_and_sba() {
    let dir = tempfile::tempdir().unwrap();
    let b = random_nba(11, 3, 2, 0.5, 0.4);
    fs::write(dir.path().join("x.tba.hoa"), emit_hoa(&b)).unwrap();
    fs::write(dir.path().join("x.sba.hoa"), emit_hoa(&degeneralize(&b).unwrap())).unwrap();
    let csv = dir.path().join("out.csv");
    let o = run(&["bench", path(dir.path()), "--simplify", "no", "--out", path(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 degeneralized, 1 paired"), "{}", stdout(&o));
    let rows = from_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.file == "x" && r.status == Status::Ok));
}

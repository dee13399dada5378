use std::path::PathBuf;
use std::process::Command;

use clap::Parser;

use dualtruth::TruthValue;
use dualtruth_cli::{run, Cli, Outcome, RunReport, EXIT_BUDGET, EXIT_INPUT, EXIT_OK};

fn theory(name: &str) -> String {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../theories"))
        .join(format!("{name}.th"))
        .to_str()
        .unwrap()
        .to_string()
}

fn run_args(args: &[&str]) -> Outcome {
    let mut full = vec!["dualtruth"];
    full.extend_from_slice(args);
    run(&Cli::try_parse_from(full).unwrap())
}

fn json(args: &[&str]) -> RunReport {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run_args(&a);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn liar_query_needs_the_closure_for_its_primary_value() {
    let liar = theory("liar");
    let r = json(&["eval", &liar, "-s", "T([~F(L)])"]);
    assert_eq!(r.verdicts[0].primary, None);
    assert!(!r.verdicts[0].final_value);
    let r = json(&["eval", &liar, "-s", "T([~F(L)])", "--seed-closure"]);
    assert_eq!(r.verdicts[0].primary, Some(TruthValue::Undetermined));
    assert!(!r.verdicts[0].final_value);
    assert_eq!(r.header.seeded, ["T([~F(L)])"]);
}

#[test]
fn outside_closure_and_auto_extend() {
    let liar = theory("liar");
    let out = run_args(&["eval", &liar, "-s", "T([T([F(L)])])"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("outside the registered closure"), "{}", out.stderr);
    let r = json(&["eval", &liar, "-s", "T([T([F(L)])])", "--auto-extend"]);
    assert_eq!(r.verdicts[0].primary, Some(TruthValue::Undetermined));
    assert!(!r.verdicts[0].final_value);
}

#[test]
fn census_and_laws() {
    let r = json(&["fixpoints", &theory("truthteller")]);
    let c = r.census.unwrap();
    assert_eq!((c.all, c.intrinsic), (Some(3), Some(1)));
    assert_eq!(c.listing.iter().filter(|f| f.intrinsic).count(), 1);

    let out = run_args(&["laws", &theory("curry")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("laws: 36 schema(s), 0 failed"), "{}", out.stdout);
}

#[test]
fn budget_exceeded_reports_the_least_fixed_point() {
    let out = run_args(&["fixpoints", &theory("logician"), "--budget", "8", "--json"]);
    assert_eq!(out.code, EXIT_BUDGET);
    let r: RunReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(!r.header.primary_complete);
    let c = r.census.unwrap();
    assert_eq!(c.all, None);
    assert_eq!(c.least, [TruthValue::Undetermined; 2]);
    let text = run_args(&["eval", &theory("logician"), "--budget", "8"]);
    assert_eq!(text.code, EXIT_BUDGET);
    assert!(text.stdout.contains("primary semantics incomplete"));
}

#[test]
fn input_errors_exit_3() {
    let out = run_args(&["eval", "/nonexistent.th"]);
    assert_eq!(out.code, EXIT_INPUT);
    let out = run_args(&["eval", &theory("curry"), "-s", "T(C) -> bot()"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("unknown symbol `bot` at 1:9"), "{}", out.stderr);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.th");
    std::fs::write(&bad, "pred T/1\n").unwrap();
    let out = run_args(&["eval", bad.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("reserved"), "{}", out.stderr);
}

#[test]
fn reports_are_deterministic_and_json_round_trips() {
    for name in ["liar", "strong_liar", "truthteller", "curry", "logician"] {
        let path = theory(name);
        for cmd in ["eval", "fixpoints", "laws", "graph"] {
            for fmt in [None, Some("--json"), Some("--dot")] {
                let mut args = vec![cmd, path.as_str()];
                args.extend(fmt);
                let a = run_args(&args);
                let b = run_args(&args);
                assert_eq!(a.stdout, b.stdout, "{args:?}");
                if fmt == Some("--json") {
                    let parsed: RunReport = serde_json::from_str(&a.stdout).unwrap();
                    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
                    assert_eq!(again, a.stdout);
                    assert_eq!(serde_json::from_str::<RunReport>(&again).unwrap(), parsed);
                }
            }
        }
    }
}

#[test]
fn timing_is_opt_in() {
    let r = json(&["eval", &theory("liar")]);
    assert_eq!(r.timing_ms, None);
    let r = json(&["eval", &theory("liar"), "--timing"]);
    assert!(r.timing_ms.is_some());
}

#[test]
fn dot_output() {
    let out = run_args(&["graph", &theory("liar"), "--dot"]);
    assert!(out.stdout.contains("digraph {"));
    assert!(out.stdout.contains("n0 -> n1 [style=dashed];"));
    assert!(out.stdout.contains("fillcolor=gray"));
}

#[test]
fn binary_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_dualtruth");
    let out = Command::new(bin).args(["eval", &theory("strong_liar")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("|\t⊤\tLL := ~T(LL)"), "{stdout}");

    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let out = Command::new(bin)
        .args(["graph", &theory("logician"), "--dot", "--out", dot.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&dot).unwrap().contains("fillcolor=green"));

    let out = Command::new(bin).args(["eval"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    let out = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

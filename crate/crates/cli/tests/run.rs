use std::path::Path;
use std::process::{Command, Output};
use std::sync::atomic::Ordering;

use amalg_cli::report::DirectiveResult;
use amalg_cli::{execute, parse_spec, Limits, RunConfig};
use amalg_core::properties::{Verdict, Witness};

const BIN: &str = env!("CARGO_BIN_EXE_amalg");

fn spec_path(name: &str) -> String {
    format!("{}/specs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn amalg(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_src(src: &str, cfg: &RunConfig) -> amalg_cli::Report {
    execute(&parse_spec(src, Limits::default()).unwrap(), cfg)
}

#[test]
fn duplication_of_z4_is_not_reduced() {
    let src = std::fs::read_to_string(spec_path("duplication.amalg")).unwrap();
    let report = run_src(&src, &RunConfig { revalidate: true, ..RunConfig::default() });
    assert_eq!(report.exit_code, 0);
    let DirectiveResult::Check(c) = &report.results[0] else { panic!("expected a check") };
    assert_eq!(c.report.verdict, Verdict::Refuted);
    assert!(matches!(&c.report.witness, Some(Witness::Nilpotent { label, .. }) if label == "(0,2)"));
    assert_eq!(c.assertion_passed, Some(true));
    assert_eq!(c.revalidated, Some(true));
}

#[test]
fn failed_assertion_exits_one() {
    let src = "ring A = zmod 4\nideal J of A = generated { 2 }\nhom id : A -> A = canonical\n\
               amalgam AM = A join id J\ncheck AM reduced assert holds\ncheck A reduced\n";
    let report = run_src(src, &RunConfig::default());
    assert_eq!(report.exit_code, 1);
    assert!(report.complete);
    assert_eq!(report.results.len(), 2);
}

#[test]
fn sample_specs_exit_zero() {
    for name in ["duplication.amalg", "matrices.amalg", "open_question.amalg"] {
        let out = amalg(&["run", &spec_path(name), "--revalidate"]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(!String::from_utf8_lossy(&out.stdout).contains("REVALIDATION FAILED"));
    }
}

#[test]
fn weak_not_nil_search_finds_nothing() {
    let report = run_src("search weak-not-nil degree 2 max-size 16", &RunConfig::default());
    let DirectiveResult::Search(s) = &report.results[0] else { panic!("expected a search") };
    assert!(s.found.is_none());
    assert_eq!(s.message, "no example found within budget");
    assert_eq!(s.examined + s.skipped, s.candidates);
    assert_eq!(report.exit_code, 0);
}

#[test]
fn armendariz_search_returns_smallest_refutation() {
    let report = run_src("search armendariz-refutation degree 1", &RunConfig { revalidate: true, ..RunConfig::default() });
    let DirectiveResult::Search(s) = &report.results[0] else { panic!("expected a search") };
    let found = s.found.as_ref().unwrap();
    assert_eq!((found.ring.as_str(), found.size), ("upper(zmod(2),2)", 8));
    assert_eq!(found.revalidated, Some(true));
}

#[test]
fn harness_degree_one_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("h.json");
    let out = amalg(&["run", &spec_path("harness.amalg"), "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let h = &v["results"][0];
    assert_eq!(h["directive"], "harness");
    assert_eq!(h["report"]["complete"], true);
    for id in ["T2.2-3", "T3.1-3", "T4.1-3"] {
        assert_eq!(h["status"][id], "VACUOUS_CORPUS_WIDE");
        assert_eq!(h["report"]["clauses"][id]["vacuous"], true);
    }
    for (_, st) in h["report"]["clauses"].as_object().unwrap() {
        assert_eq!(st["hard"], 0);
        for field in ["tested", "hyp_satisfied", "passed", "candidates", "notes"] {
            assert!(st.get(field).is_some(), "missing {field}");
        }
    }
}

#[test]
fn json_is_byte_identical_across_threads_and_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (i, extra) in [vec!["--threads", "1"], vec!["--threads", "4"], vec!["--threads", "8"], vec!["--threads", "4"]]
        .into_iter()
        .enumerate()
    {
        for spec in ["matrices.amalg", "open_question.amalg"] {
            let path = dir.path().join(format!("{i}-{spec}.json"));
            let mut args = vec!["run", &spec_path(spec), "--json", path.to_str().unwrap(), "--degree", "2"]
                .into_iter()
                .map(String::from)
                .collect::<Vec<_>>();
            args.extend(extra.iter().map(|s| s.to_string()));
            args.extend(["--seed".to_string(), (i as u64 * 7).to_string()]);
            let out = Command::new(BIN).args(&args).output().unwrap();
            assert_eq!(out.status.code(), Some(0));
            outputs.push((spec, std::fs::read(&path).unwrap()));
        }
    }
    for (spec, bytes) in &outputs {
        let first = &outputs.iter().find(|(s, _)| s == spec).unwrap().1;
        let strip = |b: &[u8]| {
            let mut v: serde_json::Value = serde_json::from_slice(b).unwrap();
            v["config"]["seed"] = serde_json::Value::Null;
            v
        };
        assert_eq!(strip(bytes), strip(first), "{spec}");
    }
    // Same seed, different thread counts: the bytes themselves agree.
    let a = amalg(&["run", &spec_path("matrices.amalg"), "--json", "-", "--threads", "1"]).stdout;
    let b = amalg(&["run", &spec_path("matrices.amalg"), "--json", "-", "--threads", "8"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn diagnostics_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.amalg");
    std::fs::write(&path, "ring X = zmod 1\n").unwrap();
    let out = amalg(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("E007 1:6"), "{err}");
}

#[test]
fn budget_exhaustion_exits_two_with_partial_report() {
    let src = "ring Z2 = zmod 2\nring M = matrix(Z2, 2)\ncheck M reduced\ncheck M armendariz degree 7\ncheck Z2 reduced\n";
    let report = run_src(src, &RunConfig::default());
    assert_eq!(report.exit_code, 2);
    assert!(!report.complete);
    assert_eq!(report.results.len(), 2);
    assert!(matches!(report.results[1], DirectiveResult::Aborted(_)));
    assert!(report.to_text().contains("INCOMPLETE"));
}

#[test]
fn interruption_marks_report_incomplete() {
    let cfg = RunConfig::default();
    cfg.cancel.store(true, Ordering::Relaxed);
    let report = run_src("ring A = zmod 2\ncheck A armendariz degree 1", &cfg);
    assert!(!report.complete);
    assert_eq!(report.exit_code, 2);
    assert!(report.to_json().contains("\"complete\": false"));
}

#[test]
fn fmt_output_reparses_to_the_same_spec() {
    let path = spec_path("matrices.amalg");
    let out = amalg(&["fmt", &path]);
    assert_eq!(out.status.code(), Some(0));
    let printed = String::from_utf8(out.stdout).unwrap();
    let original = amalg_cli::parser::parse(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(amalg_cli::parser::parse(&printed).unwrap(), original);
}

use std::collections::BTreeMap;
use std::process::Command as Process;

use fgrad_cli::{emit, execute, failed, parse_session, run, CliError, Format, Report, RunOptions};
use serde_json::Value;

const EXAMPLE: &str = include_str!("fixtures/example_att.fg");
const FILTER: &str = include_str!("fixtures/filter.fg");
const NS: &str = include_str!("fixtures/ns.fg");
const COMPOSE: &str = include_str!("fixtures/compose.fg");

fn json(src: &str) -> Value {
    let out = execute(src, &RunOptions::default(), Format::Json).unwrap();
    serde_json::from_str(&out.text).unwrap()
}

#[test]
fn fgrad_report_schema() {
    let doc = json("ring R = Q[x,y];\nfgrad a=(x) b=(y) M=R;\n");
    assert_eq!(doc["schema_version"], 1);
    let r = &doc["reports"][0];
    assert_eq!(r["verdict"], "PASS");
    let res = &r["result"];
    for key in ["value", "sequence", "ext_certificate", "lc_certificate"] {
        assert!(res.get(key).is_some(), "missing {key}");
    }
    assert_eq!(res["value"], 1);
    assert_eq!(res["ext_certificate"]["index"], 1);
    assert_eq!(res["lc_certificate"]["index"], 1);
    assert_eq!(res["constructive_certificate"], 1);
}

#[test]
fn infinity_is_a_string() {
    let doc = json("ring R = Q[x,y];\nfgrad a=(x) b=(x, y) M=R;\n");
    assert_eq!(doc["reports"][0]["result"]["value"], "infinity");
}

#[test]
fn example_attached_primes() {
    let out = execute(EXAMPLE, &RunOptions::default(), Format::Text).unwrap();
    assert!(!out.failed);
    assert_eq!(out.text, include_str!("fixtures/example_att.txt"));
    let doc = json(EXAMPLE);
    let r = &doc["reports"][0]["result"];
    assert_eq!(r["att"], serde_json::json!(["(x)"]));
    assert_eq!(r["routes_agree"], true);
    assert_eq!(r["strict"], true);
    assert_eq!(doc["reports"][1]["result"]["att"], serde_json::json!(["(x)", "(y)"]));
    let golden: Value = serde_json::from_str(include_str!("fixtures/example_att.json")).unwrap();
    assert_eq!(doc, golden);
}

#[test]
fn filter_session_golden() {
    let out = execute(FILTER, &RunOptions::default(), Format::Text).unwrap();
    assert_eq!(out.text, include_str!("fixtures/filter.txt"));
}

#[test]
fn ns_verify_passes_with_window_metadata() {
    let doc = json(NS);
    let r = &doc["reports"][0];
    assert_eq!(r["verdict"], "PASS");
    assert_eq!(r["result"]["window"]["low"], serde_json::json!([-3, -3, -3, -3]));
    assert_eq!(r["result"]["margin_stable"], true);
    assert_eq!(r["result"]["h0_exact_equal"], true);
}

#[test]
fn compose_margin_extra_changes_nothing() {
    let base = execute(COMPOSE, &RunOptions::default(), Format::Json).unwrap();
    let opts = RunOptions { window_margin_extra: 3, ..RunOptions::default() };
    let wide = execute(COMPOSE, &opts, Format::Json).unwrap();
    assert!(!base.failed && !wide.failed);
    let margin = |o: &fgrad_cli::Output| o.reports[0].json["margin"].as_i64().unwrap();
    assert_eq!(margin(&wide), margin(&base) + 3);
    assert_eq!(base.reports[1].table, wide.reports[1].table);
}

#[test]
fn tsv_round_trips() {
    let src = "ring R = Q[x,y] graded fine;\ncech-table a=(x, y) N=R window=[-3..2];\ncech-table a=(x) N=R window=[-2..2];\n";
    let session = parse_session(src).unwrap();
    let reports = run(&session, &RunOptions::default()).unwrap();
    let tsv = emit(&reports[..1], Format::Tsv).unwrap();
    let table = reports[0].table.as_ref().unwrap();
    // reference reader: header, then i, degree, dim per nonzero entry
    let mut lines = tsv.lines();
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    assert_eq!(header.first(), Some(&"i"));
    assert_eq!(header.last(), Some(&"dim"));
    let mut read: BTreeMap<(usize, Vec<i64>), usize> = BTreeMap::new();
    for l in lines {
        let f: Vec<&str> = l.split('\t').collect();
        let d: Vec<i64> = f[1..f.len() - 1].iter().map(|s| s.parse().unwrap()).collect();
        read.insert((f[0].parse().unwrap(), d), f[f.len() - 1].parse().unwrap());
    }
    let mut expected = BTreeMap::new();
    for i in 0..=table.max_index() {
        for (d, v) in table.row(i) {
            if v > 0 {
                expected.insert((i, d), v);
            }
        }
    }
    assert!(!expected.is_empty());
    assert_eq!(read, expected);
    assert!(emit(&reports, Format::Tsv).is_ok());
}

#[test]
fn tsv_rejects_other_reports() {
    let err = execute("ring R = Q[x];\nhilbert M=R;\n", &RunOptions::default(), Format::Tsv).err().unwrap();
    assert!(matches!(err, CliError::Emit(e) if e.index == 1));
}

#[test]
fn runtime_errors_carry_the_command_index() {
    // x is a zero-divisor on R/(x) away from the maximal ideal
    let src = "ring R = Q[x,y] graded fine;\nmodule N = cyclic (x);\nhilbert M=R window=[0..1];\nns-verify a=(x, y) xs=(x) N=N;\n";
    match execute(src, &RunOptions::default(), Format::Text) {
        Err(CliError::Run(e)) => {
            assert_eq!(e.index, 2);
            assert_eq!(e.command, "ns-verify");
        }
        other => panic!("{:?}", other.map(|o| o.text)),
    }
    let src = "ring R = Q[x,y];\nmodule M = coker [[x + y]];\ncech-table a=(x) N=M;\n";
    assert!(matches!(execute(src, &RunOptions::default(), Format::Text), Err(CliError::Run(e)) if e.index == 1));
}

#[test]
fn failed_is_any_fail_verdict() {
    let session = parse_session(EXAMPLE).unwrap();
    let mut reports: Vec<Report> = run(&session, &RunOptions::default()).unwrap();
    assert!(!failed(&reports));
    reports[1].verdict = Some(false);
    assert!(failed(&reports));
    let text = emit(&reports, Format::Text).unwrap();
    assert!(text.contains("verdict: FAIL") && text.ends_with("1 failed\n"));
    let doc: Value = serde_json::from_str(&emit(&reports, Format::Json).unwrap()).unwrap();
    assert_eq!(doc["failed"], true);
}

#[test]
fn deterministic_output() {
    for src in [EXAMPLE, FILTER, NS] {
        let a = execute(src, &RunOptions::default(), Format::Json).unwrap().text;
        let b = execute(src, &RunOptions::default(), Format::Json).unwrap().text;
        assert_eq!(a, b);
    }
}

#[test]
fn seed_controls_sampled_powers() {
    let src = "ring R = Q[x,y,z];\nfilter-check a=(y, z) xs=(y, z) M=R;\n";
    let powers = |seed| {
        let out = execute(src, &RunOptions { seed, ..RunOptions::default() }, Format::Json).unwrap();
        assert!(!out.failed);
        out.reports[0].json["powers"].clone()
    };
    assert_eq!(powers(7), powers(7));
    let all: Vec<Value> = (0..6).map(powers).collect();
    assert!(all.iter().any(|p| *p != all[0]));
}

#[test]
fn hilbert_of_the_plane() {
    let doc = json("ring R = Q[x,y];\nhilbert M=R window=[0..5];\n");
    let dims: Vec<u64> =
        doc["reports"][0]["result"]["values"].as_array().unwrap().iter().map(|v| v["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 2, 3, 4, 5, 6]);
}

fn binary() -> Process {
    Process::new(env!("CARGO_BIN_EXE_fgrad"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn exit_status() {
    let ok = binary().arg(fixture("example_att.fg")).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), include_str!("fixtures/example_att.txt"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fg");
    std::fs::write(&bad, "ring R = Q[x];\nideal a = (x\n").unwrap();
    let out = binary().arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("2:13"));
}

#[test]
fn out_dir_has_one_file_per_command() {
    let dir = tempfile::tempdir().unwrap();
    let status =
        binary().arg(fixture("example_att.fg")).args(["--format", "json", "--out"]).arg(dir.path()).status().unwrap();
    assert!(status.success());
    let mut names: Vec<String> =
        std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["01-att-top.json", "02-att-top-local.json"]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("01-att-top.json")).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["result"]["att"], serde_json::json!(["(x)"]));
}

#[test]
fn canonical_flag_prints_the_session() {
    let out = binary().arg(fixture("filter.fg")).arg("--canonical").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(parse_session(&text).unwrap().to_string(), text);
}

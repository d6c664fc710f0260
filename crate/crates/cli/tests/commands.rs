use std::fs;
use std::path::PathBuf;
use std::process::Command;

use cosilt_cli::commands::{run, Cli, Outcome};
use cosilt_core::cosilting::{tuple_to_pair, CosiltingTuple};
use cosilt_core::fixtures;
use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/").to_string() + name
}

fn cosilt(args: &[&str]) -> Outcome {
    let cli = <Cli as clap::Parser>::try_parse_from(
        std::iter::once("cosilt").chain(args.iter().copied()),
    )
    .unwrap();
    run(cli).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cosilt"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

const T0_TRIANGULATION: &str = r#"{"annulus":{"outer":2,"inner":1},"arcs":[
    {"kind":"bridging","outer":0,"inner":0,"winding":0},
    {"kind":"bridging","outer":1,"inner":0,"winding":0},
    {"kind":"bridging","outer":1,"inner":0,"winding":1}]}"#;

#[test]
fn mutating_the_finite_example_at_i7_leaves_i3() {
    let out = cosilt(&["mutate", &fixture("finite_example.json"), "I7"]);
    assert_eq!(out.code, 0);
    let t = CosiltingTuple::from_json_str(&out.stdout).unwrap();
    assert_eq!(tuple_to_pair(&t).unwrap().i, [3].into());
}

#[test]
fn two_completions_oracle_passes_on_2_1() {
    let out = cosilt(&[
        "oracle",
        "two-completions",
        "--p",
        "2",
        "--q",
        "1",
        "-W",
        "3",
    ]);
    assert_eq!(out.code, 0);
    assert!(
        out.stdout.starts_with("PASS two-completions"),
        "{}",
        out.stdout
    );
}

#[test]
fn depth_zero_graph_is_a_single_node() {
    let out = cosilt(&[
        "graph",
        &fixture("t0.json"),
        "--depth",
        "0",
        "--format",
        "json",
    ]);
    let g: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(g["nodes"].as_array().unwrap().len(), 1);
    assert!(g["edges"].as_array().unwrap().is_empty());
}

#[test]
fn validate_reports_crossing_arcs_with_exit_1() {
    let mut t = fixtures::t0();
    t.c = ["B(0,0,1)", "B(1,0,-1)", "B(0,0,0)"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.json", &t.to_json_string());
    let out = cosilt(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let report: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report["valid"], false);
    assert_eq!(report["violations"][0]["rule"], "C1");
}

#[test]
fn exit_codes_follow_the_error_kind() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.json", "{");
    assert_eq!(binary(&["validate", broken.to_str().unwrap()]).0, 2);
    let tri = write(&dir, "tri.json", T0_TRIANGULATION);
    let tri = tri.to_str().unwrap();
    assert_eq!(
        binary(&["-W", "0", "--slack", "0", "flip", tri, "B(1,0,1)"]).0,
        3
    );
    assert_eq!(binary(&["flip", tri, "B(1,0,1)"]).0, 0);
    assert_eq!(binary(&["oracle", "no-such-suite"]).0, 2);
}

#[test]
fn flip_through_the_cli_is_an_involution() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.json", T0_TRIANGULATION);
    let once: Value =
        serde_json::from_str(&cosilt(&["flip", tri.to_str().unwrap(), "B(1,0,1)"]).stdout).unwrap();
    let next = write(&dir, "next.json", &once["triangulation"].to_string());
    let added = once["added"].to_string();
    let twice: Value =
        serde_json::from_str(&cosilt(&["flip", next.to_str().unwrap(), &added]).stdout).unwrap();
    assert_eq!(twice["added"], once["removed"]);
    let original: Value = serde_json::from_str(T0_TRIANGULATION).unwrap();
    let mut arcs: Vec<String> = original["arcs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.to_string())
        .collect();
    let mut back: Vec<String> = twice["triangulation"]["arcs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.to_string())
        .collect();
    arcs.sort();
    back.sort();
    // Key order differs between the literal and the emitter, so compare parsed arcs.
    let parse = |v: &[String]| {
        v.iter()
            .map(|s| serde_json::from_str::<cosilt_core::annulus::Arc>(s).unwrap())
            .collect::<std::collections::BTreeSet<_>>()
    };
    assert_eq!(parse(&arcs), parse(&back));
}

#[test]
fn quiver_and_module_of_t0() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.json", T0_TRIANGULATION);
    let tri = tri.to_str().unwrap();
    let q: Value =
        serde_json::from_str(&cosilt(&["quiver", tri, "--format", "json"]).stdout).unwrap();
    assert_eq!(q["arrows"].as_array().unwrap().len(), 3);
    assert!(cosilt(&["quiver", tri])
        .stdout
        .starts_with("digraph quiver"));

    let m: Value =
        serde_json::from_str(&cosilt(&["module", "--gamma", tri, "B(0,0,2)"]).stdout).unwrap();
    assert_eq!(m["dims"], serde_json::json!({"1": 1, "2": 2, "3": 1}));
    let band: Value =
        serde_json::from_str(&cosilt(&["module", "--gamma", tri, "band", "3/2", "2"]).stdout)
            .unwrap();
    assert_eq!(band["dims"], serde_json::json!({"1": 2, "2": 2, "3": 2}));
}

#[test]
fn crossings_matrix_is_symmetric_with_zero_diagonal() {
    let dir = TempDir::new().unwrap();
    let arcs = write(
        &dir,
        "arcs.json",
        r#"{"annulus":{"outer":2,"inner":1},"arcs":[
            {"kind":"bridging","outer":0,"inner":0,"winding":0},
            {"kind":"bridging","outer":0,"inner":0,"winding":2},
            {"kind":"asymptotic","boundary":"outer","index":1,"spiral":"cw"}]}"#,
    );
    let out: Value =
        serde_json::from_str(&cosilt(&["crossings", arcs.to_str().unwrap()]).stdout).unwrap();
    let m = out["crossings"].as_array().unwrap();
    for i in 0..3 {
        assert_eq!(m[i][i], 0);
        for j in 0..3 {
            assert_eq!(m[i][j], m[j][i]);
        }
    }
    assert_eq!(m[0][1], 1);
    assert_eq!(m[0][2], "inf");
}

#[test]
fn identical_invocations_print_identical_bytes() {
    let runs = [
        vec![
            "graph".to_string(),
            fixture("asymptotic_example.json"),
            "--depth".into(),
            "2".into(),
            "--format".into(),
            "json".into(),
        ],
        vec![
            "--seed".into(),
            "7".into(),
            "oracle".into(),
            "ext-crossing".into(),
            "--pairs".into(),
            "40".into(),
            "--json".into(),
        ],
        vec![
            "mutate".into(),
            fixture("asymptotic_example.json"),
            "prufer:λ1".into(),
        ],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, first) = binary(&args);
        let (b, second) = binary(&args);
        assert_eq!((a, b), (0, 0), "{args:?}");
        assert_eq!(first, second, "{args:?}");
    }
}

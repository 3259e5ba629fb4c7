use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clap::Parser;
use constrained_codes::cli::{run, Cli};
use serde_json::Value;
use tempfile::tempdir;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn ccodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccodes"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bounds_matches_golden() {
    let out = ccodes(&["bounds", path_str(&golden("reference_graph.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out),
        read_json(&golden("reference_bounds.json"))
    );
}

#[test]
fn construct_matches_golden() {
    let dir = tempdir().unwrap();
    let code = dir.path().join("code.json");
    let out = ccodes(&[
        "construct",
        path_str(&golden("reference_graph.json")),
        "--mode",
        "systematic-dsys",
        "--p",
        "7",
        "--alpha",
        "3",
        "--out",
        path_str(&code),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read_json(&code), read_json(&golden("reference_code.json")));
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(
        summary.contains("systematic columns [0, 1, 2]"),
        "{summary}"
    );
}

#[test]
fn verify_matches_golden() {
    let out = ccodes(&[
        "verify",
        path_str(&golden("reference_code.json")),
        path_str(&golden("reference_graph.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out),
        read_json(&golden("reference_verify.json"))
    );
}

#[test]
fn demo_matches_golden_transcript() {
    let out = ccodes(&["demo-paper-example"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = std::fs::read_to_string(golden("demo_transcript.txt")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
}

#[test]
fn demo_with_other_alpha_reports_mismatch() {
    let out = ccodes(&["demo-paper-example", "--alpha", "5"]);
    assert_eq!(out.status.code(), Some(4));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("MISMATCH"));
    assert!(text.contains("Exhaustive distance: 4 (d_sys = 4)"));
}

#[test]
fn demo_over_larger_field_skips_comparison() {
    let out = ccodes(&["demo-paper-example", "--p", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .last()
        .unwrap()
        .starts_with("Reference comparison skipped"));
}

#[test]
fn malformed_graph_is_a_usage_error() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"s\": 3,").unwrap();
    let out = ccodes(&["bounds", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let missing = ccodes(&["bounds", "/nonexistent/graph.json"]);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(ccodes(&["bounds"]).status.code(), Some(1));
    assert_eq!(ccodes(&["--help"]).status.code(), Some(0));
}

#[test]
fn large_graph_hits_the_guard() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("big.json");
    let rows = vec![vec![1u8; 21]; 21];
    std::fs::write(
        &path,
        serde_json::json!({"s": 21, "n": 21, "adjacency": rows}).to_string(),
    )
    .unwrap();
    let out = ccodes(&["bounds", path_str(&path)]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("--max-exact-s"), "{msg}");
}

#[test]
fn dmin_mode_on_reference_graph_is_infeasible() {
    let out = ccodes(&[
        "construct",
        path_str(&golden("reference_graph.json")),
        "--mode",
        "systematic-dmin",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(
        msg.contains("k_min >= r_M fails: 3 < 4; use --mode systematic-dsys"),
        "{msg}"
    );
}

#[test]
fn complete_graph_dmin_round_trip() {
    let dir = tempdir().unwrap();
    let graph = dir.path().join("complete.json");
    std::fs::write(
        &graph,
        serde_json::json!({"s": 3, "n": 7, "adjacency": vec![vec![1; 7]; 3]}).to_string(),
    )
    .unwrap();
    let code = dir.path().join("code.json");
    let out = ccodes(&[
        "construct",
        path_str(&graph),
        "--mode",
        "systematic-dmin",
        "--p",
        "7",
        "--out",
        path_str(&code),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = ccodes(&["verify", path_str(&code), path_str(&graph)]);
    assert_eq!(v.status.code(), Some(0));
    let report = stdout_json(&v);
    assert_eq!(report["distance"], 5);
    assert_eq!(report["systematic"], true);
}

#[test]
fn every_mode_round_trips_through_verify() {
    let dir = tempdir().unwrap();
    let graph = golden("reference_graph.json");
    for mode in ["generic", "systematic-dsys", "mds-nullspace"] {
        let code = dir.path().join(format!("{mode}.json"));
        let out = ccodes(&[
            "construct",
            path_str(&graph),
            "--mode",
            mode,
            "--out",
            path_str(&code),
        ]);
        assert_eq!(out.status.code(), Some(0), "{mode}");
        let v = ccodes(&[
            "verify",
            path_str(&code),
            path_str(&graph),
            "--trials",
            "50",
            "--seed",
            "9",
        ]);
        assert_eq!(v.status.code(), Some(0), "{mode}");
        let report = stdout_json(&v);
        assert_eq!(report["valid_pattern"], true);
        assert_eq!(report["consistent"], true);
        assert!(
            report["distance"].as_u64().unwrap() >= 4,
            "{mode}: {report}"
        );
        assert_eq!(report["decode_trials"]["failures"], 0);
    }
}

#[test]
fn tampered_generator_fails_the_pattern_check() {
    let dir = tempdir().unwrap();
    let mut code = read_json(&golden("reference_code.json"));
    code["G"][0][1] = 3.into();
    let path = dir.path().join("tampered.json");
    std::fs::write(&path, code.to_string()).unwrap();
    let out = ccodes(&[
        "verify",
        path_str(&path),
        path_str(&golden("reference_graph.json")),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stdout_json(&out)["valid_pattern"], false);
}

#[test]
fn encode_and_decode() {
    let code = golden("reference_code.json");
    let enc = ccodes(&["encode", path_str(&code), "--message", "1,0,0"]);
    assert_eq!(
        stdout_json(&enc)["codeword"],
        serde_json::json!([1, 0, 0, 2, 5, 1, 5])
    );

    let clean = ccodes(&["decode", path_str(&code), "--received", "1,0,0,2,5,1,5"]);
    let v = stdout_json(&clean);
    assert_eq!(v["message"], serde_json::json!([1, 0, 0]));
    assert_eq!(v["fast_path"], true);

    let flipped = ccodes(&["decode", path_str(&code), "--received", "1,0,0,2,5,1,0"]);
    let v = stdout_json(&flipped);
    assert_eq!(v["message"], serde_json::json!([1, 0, 0]));
    assert_eq!(v["error_positions"], serde_json::json!([6]));

    let erased = ccodes(&[
        "decode",
        path_str(&code),
        "--received",
        "?,0,0,2,?,1,5",
        "--erasures",
        "5",
    ]);
    let v = stdout_json(&erased);
    assert_eq!(v["message"], serde_json::json!([1, 0, 0]));
    assert_eq!(v["erasures"], serde_json::json!([0, 4, 5]));
}

#[test]
fn double_error_never_decodes_silently_wrong() {
    // Two errors exceed the radius of the [7, 4] code: the decoder must
    // either fail or return a message whose codeword is within one symbol
    // of the received word.
    let code = golden("reference_code.json");
    let cw = [1u32, 0, 0, 2, 5, 1, 5];
    let g = [
        [1u32, 0, 0, 2, 5, 1, 5],
        [0, 1, 0, 0, 1, 4, 1],
        [0, 0, 1, 5, 5, 2, 1],
    ];
    for (a, b) in [(0, 1), (2, 5), (3, 6), (1, 4)] {
        let mut r = cw;
        r[a] = (r[a] + 1) % 7;
        r[b] = (r[b] + 3) % 7;
        let text: Vec<String> = r.iter().map(u32::to_string).collect();
        let out = ccodes(&["decode", path_str(&code), "--received", &text.join(",")]);
        match out.status.code() {
            Some(4) => {}
            Some(0) => {
                let m: Vec<u32> =
                    serde_json::from_value(stdout_json(&out)["message"].clone()).unwrap();
                let re: Vec<u32> = (0..7)
                    .map(|j| (0..3).map(|i| m[i] * g[i][j]).sum::<u32>() % 7)
                    .collect();
                let dist = re.iter().zip(&r).filter(|(x, y)| x != y).count();
                assert!(dist <= 1, "silent miscorrection for errors at {a},{b}");
            }
            other => panic!("unexpected exit {other:?}"),
        }
    }
}

#[test]
fn bad_flags_are_usage_errors() {
    let code = golden("reference_code.json");
    assert_eq!(
        ccodes(&["encode", path_str(&code), "--message", "1,x,0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ccodes(&["encode", path_str(&code), "--message", "1,9,0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ccodes(&["encode", path_str(&code), "--message", "1,0"])
            .status
            .code(),
        Some(1)
    );
    let graph = golden("reference_graph.json");
    let g = path_str(&graph);
    assert_eq!(ccodes(&["construct", g, "--m", "3"]).status.code(), Some(1));
    assert_eq!(ccodes(&["construct", g, "--p", "5"]).status.code(), Some(1));
    assert_eq!(
        ccodes(&["construct", g, "--alpha", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(
        ccodes(&["construct", g, "--mode", "systematic-dsys", "--k", "5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ccodes(&["construct", g, "--defining-set", "0,1,2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ccodes(&["construct", g, "--mode", "bogus"]).status.code(),
        Some(1)
    );
}

#[test]
fn construct_is_deterministic_and_respects_overrides() {
    let graph = golden("reference_graph.json");
    let g = path_str(&graph);
    let a = ccodes(&["construct", g, "--mode", "generic", "--k", "5"]);
    let b = ccodes(&["construct", g, "--mode", "generic", "--k", "5"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["k"], 5);

    let custom = ccodes(&["construct", g, "--defining-set", "6,5,4,3,2,1,0"]);
    assert_eq!(custom.status.code(), Some(0));
    assert_eq!(
        stdout_json(&custom)["defining_set"],
        serde_json::json!([6, 5, 4, 3, 2, 1, 0])
    );

    let binary = ccodes(&["construct", g, "--p", "2", "--m", "3"]);
    assert_eq!(binary.status.code(), Some(0));
    let v = stdout_json(&binary);
    assert_eq!(v["field"]["poly"], serde_json::json!([1, 1, 0, 1]));
}

#[test]
fn in_process_run_writes_to_the_given_sinks() {
    let cli = Cli::parse_from([
        "ccodes",
        "bounds",
        path_str(&golden("reference_graph.json")),
    ]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(cli, &mut out, &mut err).unwrap(), 0);
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(
        (v["d_min"].as_u64(), v["d_sys"].as_u64()),
        (Some(5), Some(4))
    );
    assert!(err.is_empty());
}

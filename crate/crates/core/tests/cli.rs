mod common;

use std::process::Command;

use common::fixture_path;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["lbl"];
    argv.extend_from_slice(args);
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = lbl::cli::run_with_io(argv, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(name: &str) -> String {
    fixture_path(name).to_str().unwrap().to_string()
}

#[test]
fn check_all_tripod_exits_zero() {
    let (code, out, _) = run(&["check-all", &path("tripod")], "");
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().any(|l| l.starts_with("A6   PASS")), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn counterexample_piped_into_check_all() {
    let (code, atlas, _) = run(&["counterexample", "--type", "A1", "--sides", "10", "2", "2"], "");
    assert_eq!(code, 0);
    let (code, out, _) = run(&["check-all", "-"], &atlas);
    assert_eq!(code, 1);
    let ti = out.lines().find(|l| l.starts_with("TI ")).unwrap();
    assert!(ti.contains("FAIL") && ti.contains("\"kind\":\"triangle\""), "{ti}");
    let (code, _, _) = run(&["counterexample", "--type", "A1", "--sides", "4", "2", "2"], "");
    assert_eq!(code, 2);
}

#[test]
fn distances_on_the_tripod() {
    // ray 1 at depth 5 and ray 3 at depth 4 meet only at the branch point
    let (code, out, _) = run(&["distance", &path("tripod"), "--from", "chart_12:5", "--to", "chart_23:-4"], "");
    assert_eq!((code, out.trim()), (0, "9"));
    let (_, out, _) = run(&["distance", &path("tripod"), "--from", "chart_12:-4", "--to", "chart_23:-4"], "");
    assert_eq!(out.trim(), "8");
    let (_, out, _) = run(&["distance", &path("tripod"), "--from", "chart_12:5", "--to", "chart_13:-5"], "");
    assert_eq!(out.trim(), "10");
    let (_, out, _) = run(
        &["distance", &path("tripod"), "--from", "chart_12:5", "--to", "chart_13:-5", "--scale", "3/2"],
        "",
    );
    assert_eq!(out.trim(), "15");
    let (code, out, _) = run(
        &["distance", &path("two_apartments_a1"), "--from", "X:1", "--to", "Y:0", "--format", "json"],
        "",
    );
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["distance"].is_null());
}

#[test]
fn retract_and_residue() {
    let (code, out, _) = run(
        &["retract", &path("tripod"), "--target", "chart_12", "--germ", "chart_12:0:0", "--point", "chart_23:-4"],
        "",
    );
    assert_eq!((code, out.trim()), (0, "chart_12:-4"));
    let (code, out, _) = run(&["residue", &path("tripod"), "--at", "chart_13:0", "--format", "json"], "");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["chambers"].as_array().unwrap().len(), 3);
    assert_eq!(v["all_pairs_co_apartment"], true);
}

#[test]
fn admissible_and_extend() {
    let (code, out, _) = run(&["admissible", &path("tripod"), "--lambda", "5"], "");
    assert_eq!(code, 1);
    assert!(out.contains("T2  FAIL"), "{out}");
    let (code, _, _) = run(&["admissible", &path("triangle_a1"), "--lambda", "10"], "");
    assert_eq!(code, 0);
    let (code, atlas, err) = run(&["extend", &path("two_apartments_a1"), "--lambda", "2", "--rounds", "1"], "");
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&atlas).unwrap();
    assert_eq!(v["provenance"]["construction"], "extension");
    let (code, _, _) = run(&["check-all", "-"], &atlas);
    assert_ne!(code, 2);
    // resumes from the stored radius
    let (code, again, _) = run(&["extend", "-", "--rounds", "1"], &atlas);
    assert_eq!(code, 0);
    let v2: serde_json::Value = serde_json::from_str(&again).unwrap();
    assert_eq!(v2["appendix"]["index"], 3);
}

#[test]
fn single_condition_and_json() {
    let (code, out, _) = run(&["check", &path("triangle_a1"), "ti"], "");
    assert_eq!(code, 1);
    assert!(out.starts_with("TI  FAIL"), "{out}");
    let (code, out, _) = run(&["check", &path("a2_apartment"), "A6", "--format", "json"], "");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "VACUOUS");
}

#[test]
fn malformed_input_exits_two() {
    let (code, _, err) = run(&["check-all", "-"], "{\"root_system\": \"A1\"}");
    assert_eq!(code, 2);
    assert!(err.contains("charts"), "{err}");
    let bad = r#"{"root_system":"A1","charts":["X","Y"],"gluings":[{"from":"X","to":"Z","region":[],"map":{}}]}"#;
    let (code, _, err) = run(&["check-all", "-"], bad);
    assert_eq!(code, 2);
    assert!(err.contains("gluings[0]"), "{err}");
    assert_eq!(run(&["check-all", &path("tripod"), "--bogus"], "").0, 2);
    assert_eq!(run(&["check", &path("tripod"), "A9"], "").0, 2);
    assert_eq!(run(&["check-all", &path("tripod"), "--scale", "0"], "").0, 2);
    assert_eq!(run(&["check-all", "/nonexistent.json"], "").0, 2);
    assert_eq!(run(&["frobnicate"], "").0, 2);
}

#[test]
fn binary_honours_probe_cap_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_lbl"))
        .args(["check-all", &path("a2_apartment"), "--format", "json"])
        .env("LBL_PROBE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["probes"]["budget"], 3);
    let a3 = v["conditions"].as_array().unwrap().iter().find(|c| c["condition"] == "A3").unwrap();
    assert_eq!(a3["inventory"]["pairs"], 3);
}

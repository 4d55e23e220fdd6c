//! End-to-end CLI tests: exit-code policy, JSON/DOT emission,
//! byte-stability, and generate→check round trips.

use std::path::Path;
use std::process::{Command, Output};

fn latgeo(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latgeo"))
        .args(args)
        .current_dir(dir)
        .env_remove("LATGEO_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const CHAIN3_POSET: &str = r#"{"elements":["p","q","r"],"relation":[[0,1],[1,2]]}"#;

#[test]
fn check_n5_reports_all_flags_false_with_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let out = latgeo(
        &["generate", "lattice", "n5", "--output", "n5.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = latgeo(&["check", "--input", "n5.json"], dir.path());
    // property failures are data, not errors
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for flag in [
        "aep_of_standard_representation",
        "cover_singleton",
        "sd_join_and_lower_semimodular",
        "extreme_point_join",
        "unique_canonical_decomposition",
        "unique_ji_separator",
        "locally_distributive",
    ] {
        assert_eq!(report[flag], serde_json::json!(false), "{flag}");
    }
    assert_eq!(report["agreement"], serde_json::json!(true));
}

#[test]
fn generate_co_poset_round_trips_with_seven_closed_sets() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "chain3.json", CHAIN3_POSET);
    let out = latgeo(
        &["generate", "co-poset", "--input", "chain3.json", "--output", "co3.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("co3.json")).unwrap();
    let file: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(file["closed"].as_array().unwrap().len(), 7);
    // read back through `check`: a convex geometry, so all flags true
    let out = latgeo(&["check", "--input", "co3.json", "--format", "text"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("agreement: true"), "{text}");
    assert!(text.contains("locally_distributive: true"), "{text}");
    assert!(text.contains("unique_ji_separator: true"), "{text}");
    assert!(text.contains("atomistic: true"), "{text}");
    // plain distributivity is *not* implied: {p,q} ∧ ({p} ∨ {r}) = {p,q}
    // while ({p,q} ∧ {p}) ∨ ({p,q} ∧ {r}) = {p}
    assert!(text.contains("distributive: false"), "{text}");
}

#[test]
fn decompose_prints_canonical_joinands_or_none() {
    let dir = tempfile::tempdir().unwrap();
    latgeo(&["generate", "lattice", "n5", "--output", "n5.json"], dir.path());
    let out = latgeo(&["decompose", "--input", "n5.json"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    // the canonical representation refines 1 = c ∨ b down to 1 = a ∨ b
    assert!(text.contains("1 = join(a, b)"), "{text}");
    latgeo(&["generate", "lattice", "m3", "--output", "m3.json"], dir.path());
    let out = latgeo(&["decompose", "--input", "m3.json"], dir.path());
    let text = stdout(&out);
    assert!(text.contains("1: none"), "{text}");
}

#[test]
fn explore_emits_inconclusive_verdict_and_stable_dot() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "explore",
        "--instance",
        "lattice_K",
        "--depth",
        "3",
        "--budget",
        "4",
        "--check",
        "strongly_spatial_at:top,b",
        "--dot",
        "k.dot",
    ];
    let out = latgeo(&args, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let verdict: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(verdict["status"], serde_json::json!("inconclusive"));
    assert!(verdict.get("witness").is_none());
    let first = std::fs::read(dir.path().join("k.dot")).unwrap();
    let out2 = latgeo(&args, dir.path());
    assert_eq!(stdout(&out), stdout(&out2));
    let second = std::fs::read(dir.path().join("k.dot")).unwrap();
    assert_eq!(first, second, "DOT output must be byte-stable");
}

#[test]
fn corpus_streams_reports_with_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = latgeo(&["corpus", "--spec", "all-moore:2"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8); // 7 instances + summary
    let summary: serde_json::Value = serde_json::from_str(lines[7]).unwrap();
    assert_eq!(summary["summary"]["instances"], serde_json::json!(7));
    assert_eq!(summary["summary"]["all_agree"], serde_json::json!(true));
    // identical invocations are byte-identical
    let out2 = latgeo(&["corpus", "--spec", "all-moore:2"], dir.path());
    assert_eq!(stdout(&out), stdout(&out2));
    // random corpora require a seed (tool error, nonzero exit)
    let out = latgeo(&["corpus", "--spec", "random:3,5"], dir.path());
    assert!(!out.status.success());
    let out = latgeo(&["corpus", "--spec", "random:3,5", "--seed", "7"], dir.path());
    assert!(out.status.success());
}

#[test]
fn tool_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out = latgeo(&["check", "--input", "missing.json"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
    write(dir.path(), "bad.json", r#"{"elements":["a"],"covers":[],"leq":[]}"#);
    let out = latgeo(&["check", "--input", "bad.json"], dir.path());
    assert!(!out.status.success());
    let out = latgeo(&["explore", "--instance", "nope"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn output_dir_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let outdir = dir.path().join("artifacts");
    std::fs::create_dir(&outdir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_latgeo"))
        .args(["generate", "lattice", "chain:3", "--output", "c3.json"])
        .current_dir(dir.path())
        .env("LATGEO_OUT_DIR", &outdir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(outdir.join("c3.json").exists());
    assert!(!dir.path().join("c3.json").exists());
}

#[test]
fn filter_lattice_and_suborders_generate() {
    let dir = tempfile::tempdir().unwrap();
    latgeo(&["generate", "lattice", "boolean:2", "--output", "b2.json"], dir.path());
    let out = latgeo(
        &["generate", "filter-lattice", "--input", "b2.json", "--output", "fb2.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("fb2.json")).unwrap();
    let file: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(file["elements"].as_array().unwrap().len(), 4);

    write(dir.path(), "chain3.json", CHAIN3_POSET);
    let out = latgeo(
        &["generate", "suborders", "--input", "chain3.json", "--output", "so3.json"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("so3.json")).unwrap();
    let file: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(file["closed"].as_array().unwrap().len(), 7);
}

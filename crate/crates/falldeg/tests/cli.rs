//! End-to-end checks of the command-line binary against golden files and the
//! documented exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_falldeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn falldeg_reports_match_golden_files() {
    for name in ["pair", "cubic", "unit"] {
        let input = golden(&format!("{}.sys", name));
        let out = run(&["falldeg", input.to_str().unwrap(), "--oracle"]);
        assert!(out.status.success(), "{} failed: {:?}", name, out);
        let expected =
            std::fs::read_to_string(golden(&format!("{}.falldeg.json", name))).unwrap();
        assert_eq!(stdout(&out), expected, "stale golden file {}", name);
    }
}

#[test]
fn descend_outputs_match_golden_files() {
    let out = run(&["descend", golden("square_gf4.sys").to_str().unwrap(), "--q", "2"]);
    assert!(out.status.success());
    let expected = std::fs::read_to_string(golden("square_gf4.classic.sys")).unwrap();
    assert_eq!(stdout(&out), expected);

    let out = run(&[
        "descend",
        golden("quintic_gf8.sys").to_str().unwrap(),
        "--q",
        "2",
        "--model",
        "bar",
    ]);
    assert!(out.status.success());
    let expected = std::fs::read_to_string(golden("quintic_gf8.bar.sys")).unwrap();
    assert_eq!(stdout(&out), expected);
}

#[test]
fn descend_output_round_trips() {
    let out = run(&[
        "descend",
        golden("square_gf4.sys").to_str().unwrap(),
        "--q",
        "2",
        "--field-eqs",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let parsed = falldeg::sysfile::SystemFile::parse(&text).unwrap();
    assert_eq!(parsed.write(), text);
    assert!(parsed.field_equations);
}

#[test]
fn tau_evaluates() {
    let out = run(&["tau", "8", "2", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["tau"], 6);
}

#[test]
fn empty_system_has_degree_zero() {
    let dir = std::env::temp_dir().join("falldeg-cli-empty");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.sys");
    std::fs::write(&path, "#falldeg v1\nfield p=2\nvars 1\nfield_equations false\n").unwrap();
    let out = run(&["falldeg", path.to_str().unwrap(), "--oracle"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["last_fall_degree"], 0);
}

#[test]
fn exit_codes_follow_contract() {
    // usage error: unknown flag
    let out = run(&["falldeg", "--nope"]);
    assert_eq!(out.status.code(), Some(64));

    // usage error: malformed input file with structured location
    let dir = std::env::temp_dir().join("falldeg-cli-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.sys");
    std::fs::write(&path, "#falldeg v1\nfield p=2\nvars 1\nfield_equations false\npoly x0 +\n")
        .unwrap();
    let out = run(&["falldeg", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["error"].as_str().unwrap().contains("line 5"));

    // verify pass -> 0
    let out = run(&[
        "verify",
        "gcd-certificate",
        "--q",
        "2",
        "--n",
        "2",
        "--trials",
        "3",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));

    // infeasible parameters -> 3
    let out = run(&["hfe", "gen", "--q", "7", "--n", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn hfe_gen_attack_round_trip() {
    let dir = std::env::temp_dir().join("falldeg-cli-hfe");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pub.sys");
    let out = run(&[
        "hfe", "gen", "--q", "2", "--n", "3", "--seed", "7", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let meta: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let plaintext: Vec<u64> = meta["plaintext"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();

    let out = run(&["hfe", "attack", path.to_str().unwrap(), "--seed", "7"]);
    assert!(out.status.success(), "{:?}", out);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let solutions: Vec<Vec<u64>> = report["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect())
        .collect();
    assert!(solutions.contains(&plaintext));
}

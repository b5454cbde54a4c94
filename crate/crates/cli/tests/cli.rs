use std::process::{Command, Output};

const TREFOIL: &str = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]";

fn kh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn jones_of_circle_and_curl() {
    for d in ["O", "X[1,2,2,1]"] {
        let o = kh(&["jones", "-d", d]);
        assert!(o.status.success());
        assert_eq!(line(&stdout(&o), "jones_J"), "jones_J = q^-1 + q");
    }
}

#[test]
fn jones_json_has_schema() {
    let o = kh(&["jones", "-d", "O", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "kh/1");
    assert_eq!(v["jones_J"], "q^-1 + q");
    assert_eq!(v["bracket_A"], "-A^-2 - A^2");
}

#[test]
fn input_errors_exit_with_two() {
    let missing = kh(&["jones", "-f", "/definitely/not/here.pd"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("cannot read"));
    assert_eq!(kh(&["jones", "-d", "X[1,2"]).status.code(), Some(2));
    assert_eq!(kh(&["homology"]).status.code(), Some(2));
    assert_eq!(kh(&["check", "--only", "nothing"]).status.code(), Some(2));
}

#[test]
fn diagram_from_file() {
    let dir = std::env::temp_dir().join(format!("kh-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trefoil.pd");
    std::fs::write(&path, TREFOIL).unwrap();
    let o = kh(&["jones", "-f", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(line(&stdout(&o), "jones_J"), "jones_J = -q^-9 + q^-5 + q^-3 + q^-1");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn unknot_homology_table() {
    let o = kh(&["homology", "-d", "O", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "kh/1");
    assert_eq!(v["groups"].as_array().unwrap().len(), 2);
    assert_eq!(v["poincare"], "q^-1 + q");
}

#[test]
fn trefoil_routes_agree() {
    for format in ["text", "json", "latex"] {
        let direct = kh(&["homology", "-d", TREFOIL, "--format", format]);
        let nerve = kh(&["homology", "-d", TREFOIL, "--route", "nerve", "--format", format]);
        assert!(direct.status.success() && nerve.status.success());
        assert_eq!(direct.stdout, nerve.stdout, "{format}");
    }
    let o = kh(&["nerve", "-d", TREFOIL]);
    assert!(stdout(&o).contains("direct route agrees: yes"));
}

#[test]
fn nerve_of_cat_two() {
    let o = kh(&["nerve", "-n", "2", "--truncation", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["objects"], 7);
    assert_eq!(v["generators"], 9);
    assert_eq!(v["identities_ok"], true);
    assert_eq!(v["constant_homology"][0], "Z");
}

#[test]
fn doldkan_roundtrip_of_times_two() {
    let o = kh(&["doldkan", "--complex", r#"{"ranks":[1,1],"boundaries":[[[2]]]}"#, "--truncation", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("degree 1: rank 1 vs 1, snf (2) vs (2)"), "{text}");
    let bad = kh(&["doldkan", "--complex", r#"{"ranks":[1,1],"boundaries":[]}"#]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn check_is_deterministic() {
    let args = ["check", "--fuzz", "4", "--seed", "7"];
    let a = kh(&args);
    let b = kh(&args);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let serial = kh(&["check", "--fuzz", "4", "--seed", "7", "--jobs", "1"]);
    assert_eq!(a.stdout, serial.stdout);
}

#[test]
fn injected_sign_bug_fails_the_differential_check() {
    let o = kh(&["check", "--only", "differential", "--fuzz", "10", "--inject-sign-bug"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("differential FAIL"));
}

#[test]
fn subdivision_report_for_three_simplex() {
    let o = kh(&["check", "--only", "subdivision", "-n", "3", "--fuzz", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("n = 3, functor 0, H_3"), "{text}");
    assert!(text.contains("subdivision  pass"));
}

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qhardy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhardy"))
        .args(args)
        .env_remove("QH_TOL")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str, args: &[&str]) {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.extend(["tests", "golden", name]);
    let expected = std::fs::read_to_string(&path).expect("golden file present");
    let out = qhardy(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let actual = String::from_utf8(out.stdout).unwrap();
    assert_eq!(actual.trim(), expected.trim(), "golden mismatch for {name}");
}

#[test]
fn describe_golden_symmetric_2() {
    golden("describe_symmetric_2.json", &["--family", "symmetric", "--d", "2", "describe"]);
}

#[test]
fn describe_golden_symmetric_3() {
    golden("describe_symmetric_3.json", &["--family", "symmetric", "--d", "3", "describe"]);
}

#[test]
fn describe_golden_cyclic_3() {
    golden("describe_cyclic_3.json", &["--family", "cyclic", "--orders", "3", "describe"]);
}

#[test]
fn describe_golden_wreath_2_2() {
    golden(
        "describe_wreath_2_2.json",
        &["--family", "wreath", "--m", "2", "--d", "2", "describe"],
    );
}

#[test]
fn describe_counts() {
    let v = json(&qhardy(&["--family", "symmetric", "--d", "3", "describe"]));
    assert_eq!(v["order"], 6);
    assert_eq!(v["pseudoreflections"], 3);
    assert_eq!(v["characters"].as_array().unwrap().len(), 2);

    let v = json(&qhardy(&["--family", "cyclic", "--orders", "4", "describe"]));
    assert_eq!(v["order"], 4);
    assert_eq!(v["hyperplanes"].as_array().unwrap().len(), 1);
    assert_eq!(v["hyperplanes"][0]["order"], 4);
    assert_eq!(v["characters"].as_array().unwrap().len(), 4);

    let v = json(&qhardy(&["--family", "wreath", "--m", "2", "--d", "2", "describe"]));
    assert_eq!(v["order"], 8);
    assert_eq!(v["hyperplanes"].as_array().unwrap().len(), 4);
    assert_eq!(v["characters"].as_array().unwrap().len(), 4);
}

#[test]
fn group_from_inline_json() {
    let a = qhardy(&["--group", r#"{"family":"symmetric","d":3}"#, "describe"]);
    let b = qhardy(&["--family", "symmetric", "--d", "3", "describe"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_errors_exit_2() {
    let out = qhardy(&["--family", "symmetric", "--d", "2", "--character", "7", "invariants", "lrho"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qhardy(&["--family", "symmetric", "--d", "2", "--character", "7", "verify-all"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qhardy(&["--family", "nope", "--d", "2", "describe"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qhardy(&["--family", "symmetric", "--d", "2", "--cutoff", "0", "describe"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qhardy(&["--family", "symmetric", "--d", "2", "--tol", "-1", "describe"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qhardy(&["describe"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qhardy"))
        .args(["--family", "symmetric", "--d", "2", "describe"])
        .env("QH_TOL", "-3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_wreath_ball_passes() {
    let out = qhardy(&["--family", "wreath", "--m", "2", "--d", "2", "--model", "ball", "verify-all"]);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(0), "{v}");
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn verify_all_exit_code_follows_checks() {
    let out = qhardy(&["--family", "symmetric", "--d", "2", "verify-all"]);
    let v = json(&out);
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["verdict"] != "PASS")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    // w_1 = z_1 + z_2 is not inner on the torus
    assert_eq!(failing, ["brown_halmos[trivial]", "brown_halmos[sign]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["verdict"], "FAIL");
}

#[test]
fn verify_all_is_deterministic() {
    let args = ["--family", "cyclic", "--orders", "3,2", "--seed", "17", "verify-all"];
    let a = qhardy(&args);
    let b = qhardy(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn kernel_and_onb_commands() {
    let out = qhardy(&[
        "--family", "symmetric", "--d", "2", "hardy", "kernel",
        "--at", "[[[0.5,0],[0,0]],[[0.5,0],[0,0]]]",
    ]);
    let v = json(&out);
    let k = v["subspace_kernel"][0].as_f64().unwrap();
    assert!((k - 1.0 / 6.0).abs() < 1e-12);

    let out = qhardy(&["--family", "symmetric", "--d", "2", "hardy", "onb", "--degree", "3"]);
    let v = json(&out);
    let reps: Vec<Value> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["representative"].clone())
        .collect();
    assert_eq!(reps, serde_json::json!([[1, 0], [2, 0], [3, 0], [2, 1]]).as_array().unwrap().clone());
}

#[test]
fn toeplitz_commands() {
    let w1 = r#"{"d":2,"terms":[{"a":[1,0],"c":[1,0]}]}"#;
    let w1bar = r#"{"d":2,"terms":[{"a":[0,0],"b":[1,0],"c":[1,0]}]}"#;
    let q = r#"{"d":2,"terms":[{"a":[1,0],"b":[1,0],"c":[1,0]}]}"#;
    let base = ["--family", "symmetric", "--d", "2", "--cutoff", "5"];

    let out = qhardy(&[&base[..], &["toeplitz", "product-transfer", "--symbol", w1bar, "--symbol-v", w1, "--symbol-q", q]].concat());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["consistent"], true);

    let out = qhardy(&[&base[..], &["toeplitz", "product-transfer", "--symbol", w1, "--symbol-v", w1bar, "--symbol-q", q]].concat());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["consistent"], true);

    let out = qhardy(&[&base[..], &["toeplitz", "commute-transfer", "--symbol", w1, "--symbol-v", w1]].concat());
    assert_eq!(out.status.code(), Some(0));

    let out = qhardy(&[&base[..], &["--character", "sign", "toeplitz", "matrix", "--symbol", w1]].concat());
    let v = json(&out);
    assert!(v["exact_region_size"].as_u64().unwrap() > 0);

    let amb = r#"{"d":2,"terms":[{"a":[1,1],"b":[0,0],"c":[1,0]},{"a":[0,0],"b":[1,0],"c":[1,0]},{"a":[0,0],"b":[0,1],"c":[1,0]}]}"#;
    let out = qhardy(&[&base[..], &["toeplitz", "reducing", "--ambient-symbol", amb]].concat());
    assert_eq!(out.status.code(), Some(0));

    let out = qhardy(&[&base[..], &["--model", "ball", "toeplitz", "brown-halmos", "--symbol", w1]].concat());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_output() {
    let out = qhardy(&["--family", "cyclic", "--orders", "3", "--format", "csv", "characters"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("path,value\n"));
    assert!(text.contains("characters.1.name,chi1\n"));
}

//! End-to-end runs of the `pencil-lab` binary: reports, exit codes and
//! determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pencil-lab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn values(block: &Value) -> Vec<String> {
    block["members"].as_array().unwrap().iter().map(|m| m["value"].as_str().unwrap().to_string()).collect()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pencil-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn cubic_with_ranks() {
    let r = json(&run(&["analyze", "--f", "Y^3-3*Y", "--rank", "on"]));
    assert_eq!(r["schema"], "pencil-lab/1");
    assert_eq!(values(&r["sets"]["singset"]), ["2", "-2"]);
    assert_eq!(r["rank"]["rho_pi"], -2);
    assert_eq!(r["rank"]["zeta"], -1);
    assert_eq!(r["rank"]["jungian_residual"], 0);
    assert_eq!(values(&r["rank"]["defset"]), ["2", "-2"]);
    let m = &r["sets"]["singset"]["members"][0];
    assert_eq!(m["minpoly"], serde_json::json!(["-2", "1"]));
    assert_eq!(m["box"], serde_json::json!(["2", "2", "0", "0"]));
    assert_eq!(m["rational"], true);
}

#[test]
fn hyperbola_sets() {
    let r = json(&run(&["analyze", "--f", "X*Y+1"]));
    assert_eq!(values(&r["sets"]["redset"]), ["1"]);
    assert_eq!(values(&r["sets"]["singset"]), ["1"]);
    assert_eq!(r["sets"]["redset"]["members"][0]["exponents"], serde_json::json!([1, 1]));
    assert!(r.get("rank").is_none());
    let text = run(&["analyze", "--f", "X*Y+1", "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("redset(f) = {1 [1, 1]}"), "{text}");
    assert!(text.contains("singset(f) = {1}"), "{text}");
}

#[test]
fn klein_pencil_from_files() {
    let (f, w) = ("klein_f.txt", "klein_w.txt");
    let h1 = "X^30 + Y^30 - 10005*X^20*Y^10 - 10005*X^10*Y^20 + 522*X^25*Y^5 - 522*X^5*Y^25";
    let h2 = "-X^20 - Y^20 - 494*X^10*Y^10 + 228*X^15*Y^5 - 228*X^5*Y^15";
    let fp = scratch(f, &format!("({h1})^2\n"));
    let wp = scratch(w, &format!("({h2})^3\n"));
    let r = json(&run(&[
        "analyze",
        "--f",
        &format!("@{}", fp.display()),
        "--w",
        &format!("@{}", wp.display()),
        "--sets",
        "primset,uniset",
    ]));
    let p = &r["sets"]["primset"];
    let mut mus: Vec<u64> = p["members"].as_array().unwrap().iter().map(|m| m["mu"].as_u64().unwrap()).collect();
    assert_eq!(p["infinity"], true);
    mus.push(p["infinity_detail"]["mu"].as_u64().unwrap());
    mus.sort_unstable();
    assert_eq!(mus, [2, 3, 5]);
    assert_eq!(r["bounds"]["primset_plus"]["size"], 3);
    assert_eq!(r["bounds"]["primset_plus"]["holds"], true);
    assert!(r["sets"].get("singset").is_none());
}

#[test]
fn json_input_and_variable_names() {
    let path = scratch("poly.json", r#"{"vars": ["u", "v"], "terms": [[[1, 1], "1"], [[0, 0], "1"]]}"#);
    let r = json(&run(&["analyze", "--f", &format!("@{}", path.display()), "--sets", "redset"]));
    assert_eq!(r["input"]["f"], "u*v + 1");
    assert_eq!(values(&r["sets"]["redset"]), ["1"]);
    let r = json(&run(&["analyze", "--f", "s*t+1", "--vars", "s,t", "--sets", "singset"]));
    assert_eq!(r["input"]["f"], "s*t + 1");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    // Parse and input errors.
    let out = run(&["analyze", "--f", "X*Y+"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 4"));
    assert_eq!(code(&["analyze", "--f", "X*Z"]), 2);
    assert_eq!(code(&["analyze", "--f", "X", "--sets", "nonsense"]), 2);
    assert_eq!(code(&["analyze", "--f", "X", "--vars", "X"]), 2);
    assert_eq!(code(&["analyze", "--f", "@/nonexistent/file"]), 2);
    assert_eq!(code(&["analyze"]), 2);
    // Preconditions.
    assert_eq!(code(&["analyze", "--f", "X", "--w", "X*Y"]), 3);
    assert_eq!(code(&["analyze", "--f", "X*Y+1", "--w", "X", "--rank", "on"]), 3);
    assert_eq!(code(&["verify", "nonsense"]), 2);
}

#[test]
fn deterministic_output() {
    let args = ["analyze", "--f", "Y^2-X^3+X*Y", "--rank", "on", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let path = scratch("out.json", "");
    let mut with_out = args.to_vec();
    let p = path.display().to_string();
    with_out.extend(["--out", &p]);
    let c = run(&with_out);
    assert!(c.status.success() && c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    // Timings appear only on request.
    assert!(json(&a).get("timing_ms").is_none());
    let t = json(&run(&["analyze", "--f", "X*Y+1", "--timing"]));
    assert!(t["timing_ms"]["normalize"].is_number());
}

#[test]
fn corpus_listing() {
    let out = run(&["corpus", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("klein")), "{text}");
    let dump = json(&run(&["corpus", "dump", "--id", "xy_plus_one"]));
    assert_eq!(dump[0]["f"], "X*Y + 1");
    assert_eq!(run(&["corpus", "dump", "--id", "missing"]).status.code(), Some(2));
}

#[test]
fn verify_golden_examples() {
    let out = run(&["verify", "paper-examples"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(text.trim_end().ends_with("0 failed"), "{text}");
}

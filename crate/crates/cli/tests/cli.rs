use std::fs;
use std::path::Path;
use std::process::Command;

use infgroup::json::function_from_json;
use infgroup::minimality::check_minimality;
use infgroup_cli::run_with;
use tempfile::TempDir;

/// Runs the CLI in-process and returns `(exit code, stdout, stderr)`.
fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("infgroup").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

fn rational_three_slope(dir: &TempDir) -> String {
    let p = path(dir, "three_slope.json");
    let args = [
        "builtin", "three-slope", "--f", "4/5", "--d1", "3/5", "--d3", "1/10", "--s", "3/20", "--delta1", "1/100",
        "--delta2", "1/200", "-o", &p,
    ];
    assert_eq!(run(&args).0, 0);
    p
}

#[test]
fn gmi_is_extreme() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "gmi.json");
    assert_eq!(run(&["builtin", "gmi", "--f", "1/5", "-o", &g]).0, 0);
    let (code, out, _) = run(&["extreme", &g]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kernel_dimension"], 0);
    assert_eq!(v["verdict"], "extreme");
    assert_eq!(run(&["minimal", &g]).0, 0);
}

#[test]
fn rational_three_slope_has_minimal_witnesses() {
    let dir = TempDir::new().unwrap();
    let f = rational_three_slope(&dir);
    let w = path(&dir, "w.json");
    let (code, out, _) = run(&["extreme", &f, "--witness", &w]);
    assert_eq!(code, 1);
    assert!(out.contains("\"not_extreme\""));
    let pair: Vec<serde_json::Value> = serde_json::from_str(&fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(pair.len(), 2);
    for (k, member) in pair.iter().enumerate() {
        let p = write(&dir, &format!("member{k}.json"), &member.to_string());
        assert_eq!(run(&["minimal", &p]).0, 0);
        assert!(check_minimality(&function_from_json(&member.to_string()).unwrap()).is_minimal());
    }
}

#[test]
fn sawtooth_fails_symmetry() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "saw.json", r#"{"field":"rational","f":"1/2","breakpoints":["0"],"values":["0"],"limits":[["0","1"]]}"#);
    let (code, out, _) = run(&["minimal", &p]);
    assert_eq!(code, 1);
    assert!(out.contains("\"symmetry\""));
}

#[test]
fn invalid_input_exits_2_with_a_diagnostic() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.json", "{\"field\": \"rational\",\n \"f\": \"1/2\",\n \"breakpoints\": [\"0\"]}");
    let (code, _, err) = run(&["minimal", &p]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3") && err.contains("values"), "{err}");

    let p = write(&dir, "field.json", r#"{"field":"rational","f":"1/2","breakpoints":["0","1/2*sqrt(2)"],"values":["0","1"]}"#);
    let (code, _, err) = run(&["minimal", &p]);
    assert_eq!(code, 2);
    assert!(err.contains("breakpoints[1]"), "{err}");

    let saw = write(&dir, "saw.json", r#"{"field":"rational","f":"1/2","breakpoints":["0"],"values":["0"],"limits":[["0","1"]]}"#);
    assert_eq!(run(&["extreme", &saw]).0, 2);
    assert_eq!(run(&["minimal", &path(&dir, "missing.json")]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["builtin", "gmi", "--f", "3/2"]).0, 2);
}

#[test]
fn restrict_and_interpolate_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "gmi.json");
    assert_eq!(run(&["builtin", "gmi", "--f", "1/4", "-o", &g]).0, 0);
    let finite = path(&dir, "finite.json");
    assert_eq!(run(&["restrict", &g, "--denominator", "8", "-o", &finite]).0, 0);
    let (code, out, _) = run(&["interpolate", &finite]);
    assert_eq!(code, 0);
    let back = function_from_json(&out).unwrap();
    let orig = function_from_json(&fs::read_to_string(&g).unwrap()).unwrap();
    assert!(back.same_function(&orig));
    assert_eq!(run(&["restrict", &g, "--denominator", "6"]).0, 2);
}

#[test]
fn coverage_report() {
    let dir = TempDir::new().unwrap();
    let f = rational_three_slope(&dir);
    let (code, out, _) = run(&["coverage", &f]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fully_covered"], false);
    assert_eq!(v["uncovered_components"].as_array().unwrap().len(), 2);
}

fn count_kind(csv: &str, kind: &str) -> usize {
    csv.lines().filter(|l| l.ends_with(&format!(",{kind}"))).count()
}

#[test]
fn plots() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "gmi.json");
    run(&["builtin", "gmi", "--f", "1/5", "-o", &g]);
    let svg = path(&dir, "gmi.svg");
    assert_eq!(run(&["plot", &g, "--complex", "-o", &svg]).0, 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"segment\"").count(), 2);
    assert!(text.contains("class=\"additive-face\""));

    let zero = write(&dir, "zero.json", r#"{"field":"rational","f":"1/2","breakpoints":["0"],"values":["0"]}"#);
    let csv = path(&dir, "zero.csv");
    assert_eq!(run(&["plot", &zero, "-o", &csv]).0, 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("x0,y0,x1,y1,kind"));
    assert_eq!(count_kind(&text, "function"), 1);
    assert!(text.contains("0,0,1,0,function"));

    let f = rational_three_slope(&dir);
    let csv = path(&dir, "three.csv");
    assert_eq!(run(&["plot", &f, "-o", &csv]).0, 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(count_kind(&text, "function"), 20);
    assert_eq!(count_kind(&text, "open_point"), 0);

    assert_eq!(run(&["plot", &g, "-o", &path(&dir, "gmi.png")]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bin = env!("CARGO_BIN_EXE_infgroup");
    let g = path(&dir, "gmi.json");
    let status = Command::new(bin).args(["builtin", "gmi", "--f", "1/3", "-o", &g]).status().unwrap();
    assert!(status.success());
    assert!(Path::new(&g).exists());
    let out = Command::new(bin).args(["extreme", &g]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).args(["minimal", "/nonexistent.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

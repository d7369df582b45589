use std::io::Write;
use std::process::{Command, Output};

fn krammer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krammer")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TRIGONAL: &str = "s1 s2 s1 s2^4 s1 s2 s1";
const TRIGONAL_POLY: &str =
    "t^10*q^30 - t^8*q^24 - t^8*q^20 + t^6*q^14 - t^4*q^16 + t^2*q^10 + t^2*q^6 - 1\n";

#[test]
fn krammer_poly_of_trigonal_word() {
    let o = krammer(&["krammer-poly", "--n", "3", "--word", TRIGONAL]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), TRIGONAL_POLY);
}

#[test]
fn essential_reports_missing_generator() {
    let o = krammer(&["essential", "--n", "5", "--word", "s1 s2 s4"]);
    assert_eq!(stdout(&o), "essential: true (missing: 3)\n");
    let o = krammer(&["essential", "--n", "3", "--word", "s1 s2^-1"]);
    assert_eq!(stdout(&o), "essential: false\n");
}

#[test]
fn krammer_matrix_text_layout() {
    let o = krammer(&["krammer-matrix", "--n", "3", "--word", "s1"]);
    assert_eq!(
        stdout(&o),
        "[ t*q^2       | 0 | 0      ]\n[ t*q^2 - t*q | 0 | q      ]\n[ 0           | 1 | -q + 1 ]\n"
    );
}

#[test]
fn krammer_matrix_json_names_the_basis() {
    let o = krammer(&["--format", "json", "krammer-matrix", "--n", "3", "--word", "s2^-1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["basis"], serde_json::json!([[1, 2], [1, 3], [2, 3]]));
    assert_eq!(v["matrix"]["rows"], 3);
    assert_eq!(v["word"], "s2^-1");
}

#[test]
fn json_input_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"n": 3, "words": ["{TRIGONAL}"]}}"#).unwrap();
    let path = f.path().to_str().unwrap();
    let o = krammer(&["--format", "json", "krammer-poly", "--input", path]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let expected: krammer::LaurentPoly = TRIGONAL_POLY.trim().parse().unwrap();
    assert_eq!(v["polynomial"], serde_json::to_value(expected).unwrap());
    assert_eq!(v["exact"], true);
    assert_eq!(v["per_fiber"].as_array().unwrap().len(), 1);
    let o = krammer(&["krammer-poly", "--n", "4", "--input", path]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn capped_result_exits_3() {
    let o = krammer(&["krammer-poly", "--n", "3", "--word", "s1^2 s2^2", "--word", "s1 s2 s1 s2 s1 s2", "--minor-cap", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("inexact"));
    let o = krammer(&["krammer-poly", "--n", "3", "--word", "s1", "--minor-cap", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_input_exits_2_with_diagnostic() {
    for args in [
        &["krammer-poly", "--n", "3", "--word", "s4"][..],
        &["krammer-matrix", "--n", "3", "--word", "x1"],
        &["eigenvector", "--n", "5", "--missing", "1"],
        &["curve-analyze", "--curve", "[[1]]"],
        &["alexander", "--n", "3"],
    ] {
        let o = krammer(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn relations_check_exit_codes() {
    for n in ["2", "3", "5"] {
        let o = krammer(&["relations-check", "--n", n]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).ends_with("all hold\n"));
    }
    let o = krammer(&["relations-check", "--n", "4", "--burau"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn alexander_of_trefoil_fiber() {
    let o = krammer(&["alexander", "--n", "2", "--word", "s1^3"]);
    assert_eq!(stdout(&o), "t^3 + 1\n");
}

#[test]
fn eigenvector_entries_follow_basis() {
    let o = krammer(&["eigenvector", "--n", "4", "--missing", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with('(')).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows[0].starts_with("(1,2) x:"));
    assert!(rows[5].starts_with("(3,4) y:"));
}

#[test]
fn curve_analyze_family_and_monodromy() {
    let o = krammer(&["curve-analyze", "--curve", r#"[["-7","3"],["-7","-1"],["-7","5"]]"#]);
    let text = stdout(&o);
    assert!(text.contains("full-twist family: n = 3, d = 1"), "{text}");
    assert!(text.contains("closed form t^6*q^18 - 3*t^4*q^12 + 3*t^2*q^6 - 1 matches"), "{text}");
    let o = krammer(&["curve-analyze", "--curve", "[[0,0,0,1],[0,0,0,-1],[0,4]]", "--word", TRIGONAL]);
    let text = stdout(&o);
    assert!(text.ends_with(&format!("invariant: {TRIGONAL_POLY}")), "{text}");
    assert!(text.contains("irrational x: (2,3)"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "curve-analyze", "--curve", "[[0,0,0,1],[0,0,0,-1],[0,4]]"];
    assert_eq!(krammer(&args).stdout, krammer(&args).stdout);
}

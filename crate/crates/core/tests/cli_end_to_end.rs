use std::process::Command;

use maxsel::cli::rerun;
use serde_json::Value;

fn maxsel(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_maxsel")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout, _) = maxsel(&full);
    (code, serde_json::from_str(&stdout).expect("one JSON object"))
}

fn h_file(rows: &str) -> tempfile::NamedTempFile {
    let f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    std::fs::write(f.path(), rows).unwrap();
    f
}

#[test]
fn hilbert_prints_the_symbol() {
    let (code, out, _) = maxsel(&["hilbert", "--a", "-1", "--b", "-1", "--place", "2"]);
    assert_eq!((code, out.as_str()), (0, "-1\n"));
    let (code, out, _) = maxsel(&["hilbert", "--a", "-1", "--b", "-1", "--place", "inf"]);
    assert_eq!((code, out.as_str()), (0, "-1\n"));
    let (code, out, _) = maxsel(&["hilbert", "--a", "-1", "--b", "5", "--place", "5"]);
    assert_eq!((code, out.as_str()), (0, "1\n"));
}

#[test]
fn quadratic_verdict_json() {
    let (code, v) = json(&["selective-quadratic", "--d", "-1", "--ramified", "2", "--ramified-infinite"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "L");
    assert_eq!(v["proportion"], "1/2");
    assert_eq!(v["selective"], true);
    for key in ["command", "inputs", "result", "trace", "errors"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn odd_verdict_from_file() {
    let h = h_file("[[1, 0, 0], [0, 2, 0], [0, 0, 4]]");
    let arg = format!("@{}", h.path().display());
    let (code, v) = json(&["selective-odd", "--poly", "-1,-2,1,1", "--order-basis", &arg, "--ramified", "2,7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "K");
    let findings: Vec<&str> = v["trace"].as_array().unwrap().iter().map(|e| e["finding"].as_str().unwrap()).collect();
    assert!(findings.contains(&"symmetric at 7"));
    assert!(findings.contains(&"asymmetric at 2"));
    // the file contents are embedded, not the path
    assert_eq!(v["inputs"]["order"]["rows"][2][2], "4");
}

#[test]
fn rational_entries_in_basis_file() {
    // Z[(1 + sqrt(-3))/2]: the maximal order of Q(sqrt(-3)) given explicitly
    let ib = h_file(r#"[[1, 0], ["1/2", "1/2"]]"#);
    let arg = format!("@{}", ib.path().display());
    let (code, v) = json(&["splitting", "--poly", "3,0,1", "--integral-basis", &arg, "--prime", "7"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"], "split");
}

#[test]
fn validation_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["selective-odd", "--poly", "-1,-2,1,1", "--ramified", "7"],
        &["selective-odd", "--poly", "-1,-2,1,1", "--ramified", "7,13"],
        &["selective-odd", "--poly", "-1,-2,1,1", "--ramified", "2,7", "--ramified-infinite"],
        &["selective-odd", "--poly", "-1,-2,1,1", "--degree", "5"],
        &["selective-odd", "--poly", "-1,-2,1,1", "--order-basis", "1,0,0;0,2,0;0,0,1"],
        &["selective-quadratic", "--d", "4"],
        &["selective-quadratic", "--d", "-1", "--ramified", "5", "--ramified-infinite"],
        &["ramset", "--ramified", "2"],
        &["splitting", "--poly", "1,0,0,0,1", "--prime", "3"],
        &["hilbert", "--a", "0", "--b", "1", "--place", "3"],
        &["hilbert", "--a", "1", "--b", "1", "--place", "4"],
        &["frobnicate"],
        &["hilbert", "--a", "1"],
    ];
    for args in cases {
        let (code, out, err) = maxsel(args);
        assert_eq!(code, 2, "{args:?}: {out}");
        assert!(!err.is_empty(), "{args:?} wrote nothing to stderr");
    }
    let (_, err_json) = json(&["selective-odd", "--poly", "-1,-2,1,1", "--ramified", "7,13"]);
    assert_eq!(err_json["errors"][0]["kind"], "validation");
    assert!(err_json["errors"][0]["message"].as_str().unwrap().contains("13"));
    assert_eq!(err_json["result"], Value::Null);
}

#[test]
fn text_and_json_agree() {
    let fixtures: &[&[&str]] = &[
        &["selective-quadratic", "--d", "-1", "--ramified", "2", "--ramified-infinite"],
        &["selective-quadratic", "--d", "-1"],
        &["selective-quadratic", "--d", "5"],
        &["selective-quadratic", "--d", "-4", "--a", "-1", "--b", "-1"],
        &["selective-odd", "--poly", "-1,-2,1,1"],
        &["selective-odd", "--poly", "-1,-2,1,1", "--order-basis", "1,0,0;0,2,0;0,0,4", "--ramified", "2,7"],
        &["selective-odd", "--poly", "-1,-2,1,1", "--order-basis", "1,0,0;0,14,0;0,0,196", "--ramified", "2,7"],
        &["selective-odd", "--poly", "-1,-1,0,1"],
        &["selective-odd", "--poly", "-1,-2,1,1", "--conductor", "6", "--ramified", "2,3"],
    ];
    for args in fixtures {
        let (code, text, _) = maxsel(args);
        let (jcode, v) = json(args);
        assert_eq!((code, jcode), (0, 0), "{args:?}");
        let first = text.lines().next().unwrap();
        let word = first.split_whitespace().last().unwrap();
        assert_eq!(word, v["result"].as_str().unwrap(), "{args:?}");
        for entry in v["trace"].as_array().unwrap() {
            assert!(text.contains(entry["finding"].as_str().unwrap()), "{args:?}");
        }
    }
}

#[test]
fn json_output_reruns_identically() {
    let fixtures: &[&[&str]] = &[
        &["hilbert", "--a", "-1", "--b", "-1", "--place", "2"],
        &["ramset", "--a", "-1", "--b", "-1"],
        &["embeds", "--d", "-1", "--ramified", "5", "--ramified-infinite"],
        &["selective-quadratic", "--d", "-12", "--ramified", "2,3"],
        &["selective-odd", "--poly", "-1,-2,1,1", "--order-basis", "1,0,0;0,2,0;0,0,4", "--ramified", "7,2"],
        &["splitting", "--poly", "-1,-2,1,1", "--prime", "7"],
        &["automorphism", "--poly", "-1,-2,1,1"],
        &["automorphism", "--poly", "-1,-1,0,1"],
    ];
    for args in fixtures {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let (_, first, _) = maxsel(&full);
        let again = rerun(&first).unwrap();
        assert_eq!(again.code, 0);
        assert_eq!(again.stdout, first, "{args:?}");
    }
}

#[test]
fn places_are_sorted_with_infinity_last() {
    let (_, v) = json(&["ramset", "--a", "-3", "--b", "-7"]);
    let places: Vec<&str> = v["result"].as_array().unwrap().iter().map(|p| p.as_str().unwrap()).collect();
    assert_eq!(places.last(), Some(&"inf"));
    let mut finite: Vec<u64> = places[..places.len() - 1].iter().map(|p| p.parse().unwrap()).collect();
    let sorted = {
        let mut s = finite.clone();
        s.sort();
        s
    };
    assert_eq!(finite, sorted);
    finite.dedup();
    assert_eq!(finite.len(), places.len() - 1);
}

#[test]
fn automorphism_command() {
    let (code, out, _) = maxsel(&["automorphism", "--poly", "-5,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "result  -x\ngalois  true\n");
    let (_, v) = json(&["automorphism", "--poly", "-1,-1,0,1"]);
    assert_eq!(v["galois"], false);
    assert_eq!(v["result"], Value::Null);
}

//! End-to-end tests of the command-line interface: output shapes, JSON
//! round-trips, and the exit-code contract.

use std::io::Write;
use std::process::{Command, Output};

fn mzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(args)
        .env_remove("MZV_DIGITS")
        .env_remove("MZV_MAX_DIGITS")
        .env_remove("MZV_BASIS")
        .env_remove("MZV_WEIGHT_CAP")
        .env_remove("MZV_MAX_DEN")
        .output()
        .expect("failed to run mzv binary")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn decompose_weight_five_golden() {
    let out = mzv(&[
        "decompose",
        "zeta(2,3)",
        "--digits",
        "34",
        "--weight-cap",
        "5",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout_of(&out);
    assert!(text.contains("(-11/2)*zeta(5)"), "got: {text}");
    assert!(text.contains("(3)*zeta(2)*zeta(3)"), "got: {text}");
}

#[test]
fn decompose_json_round_trip() {
    let out = mzv(&[
        "decompose",
        "zeta(2,3)",
        "--digits",
        "34",
        "--weight-cap",
        "5",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(v["weight"], 5);
    let terms = v["terms"].as_array().expect("terms array");
    assert_eq!(terms.len(), 2);
    let coeffs: Vec<&str> = terms
        .iter()
        .map(|t| t["coefficient"].as_str().unwrap())
        .collect();
    assert!(coeffs.contains(&"-11/2"));
    assert!(coeffs.contains(&"3"));
    // every certificate records the working precision and a rational witness
    for c in v["certificates"].as_array().expect("certificates") {
        assert!(c["digits"].as_u64().unwrap() >= 34);
        assert!(c["reconstructed"].is_string());
    }
}

#[test]
fn eval_euler_identity() {
    let out = mzv(&["eval", "zeta(1,2)", "--digits", "40"]);
    assert!(out.status.success());
    let lhs = stdout_of(&out);
    let out2 = mzv(&["eval", "zeta(3)", "--digits", "40"]);
    let rhs = stdout_of(&out2);
    assert_eq!(lhs.trim()[..38], rhs.trim()[..38]);
}

#[test]
fn phi_fixture() {
    let out = mzv(&["phi", "zeta(3,5)", "--digits", "34", "--weight-cap", "8"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("-5*f5 f3"));
}

#[test]
fn dims_table() {
    let out = mzv(&["dims", "--max-weight", "10"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    for (w, d) in [(2, 1), (8, 4), (10, 7)] {
        let needle = format!("{w:>6}  {d:>6}");
        assert!(text.contains(&needle), "missing {needle:?} in: {text}");
    }
}

#[test]
fn verify_reports_equality() {
    let out = mzv(&[
        "verify",
        "--digits",
        "34",
        "--weight-cap",
        "5",
        "--",
        "zeta(2,3)",
        "-11/2*zeta(5) + 3*zeta(2)*zeta(3)",
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout_of(&out).contains("equal"));

    let bad = mzv(&[
        "verify",
        "--digits",
        "34",
        "--weight-cap",
        "5",
        "--",
        "zeta(2,3)",
        "-11/2*zeta(5)",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn parse_error_exits_4() {
    let out = mzv(&["decompose", "zeta(2,,3)"]);
    assert_eq!(out.status.code(), Some(4));
    let out = mzv(&["eval", "zeta()"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn dependent_basis_exits_2() {
    // zeta(3,5)+zeta(5,3)+zeta(8) = zeta(3)*zeta(5) by the stuffle product,
    // so this weight-8 "generator" already lies in the product span
    let dir = std::env::temp_dir().join(format!("mzv-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dependent.json");
    let mut f = std::fs::File::create(&path).unwrap();
    write!(
        f,
        r#"{{"kind": "algebra", "name": "dependent", "weights": [
            {{"weight": 2, "elements": [{{"terms": [{{"index": [2], "coef": "1"}}]}}]}},
            {{"weight": 3, "elements": [{{"terms": [{{"index": [3], "coef": "1"}}]}}]}},
            {{"weight": 5, "elements": [{{"terms": [{{"index": [5], "coef": "1"}}]}}]}},
            {{"weight": 7, "elements": [{{"terms": [{{"index": [7], "coef": "1"}}]}}]}},
            {{"weight": 8, "elements": [{{"terms": [
                {{"index": [3,5], "coef": "1"}},
                {{"index": [5,3], "coef": "1"}},
                {{"index": [8], "coef": "1"}}
            ]}}]}}
        ]}}"#
    )
    .unwrap();
    drop(f);

    let path_str = path.to_str().unwrap();
    let out = mzv(&[
        "decompose",
        "zeta(3,5)",
        "--basis",
        path_str,
        "--weight-cap",
        "8",
        "--digits",
        "34",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn coaction_fixture() {
    let out = mzv(&["coaction", "zeta(2,3)", "--r", "3"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("(3)"), "got: {text}");
    assert!(text.contains("zeta(3)"), "got: {text}");
    assert!(text.contains("zeta(2)"), "got: {text}");
}

#[test]
fn env_var_controls_digits() {
    let out = Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(["eval", "zeta(2)"])
        .env("MZV_DIGITS", "32")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    let frac = text.trim().split('.').nth(1).expect("decimal point");
    assert_eq!(frac.len(), 32, "got: {text}");
}

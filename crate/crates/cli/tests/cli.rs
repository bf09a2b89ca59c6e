use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn scenario(name: &str) -> PathBuf {
    root().join("scenarios").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acgeom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn schema_check(schema: &str, doc: &Value) {
    let text = fs::read_to_string(root().join("schemas").join(schema)).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{doc} violates the schema: {errors:?}");
}

/// Runs a command that must succeed, checks its output against a schema and
/// returns the parsed document.
fn ok_json(args: &[&str], schema: &str) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    schema_check(schema, &doc);
    doc
}

fn failing(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is a JSON error object");
    schema_check("error.schema.json", &err);
    err
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn distance_on_two_point_triple() {
    let t = scenario("two_point.json");
    let doc = ok_json(
        &[
            "distance",
            "--triple",
            arg(&t),
            "--state-a",
            "0",
            "--state-b",
            "1",
        ],
        "distance.output.schema.json",
    );
    assert!((doc["value"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(doc["infinite"], false);
    let checked = ok_json(
        &[
            "distance",
            "--triple",
            arg(&t),
            "--state-a",
            "0.5,0.5",
            "--state-b",
            "1",
            "--oracle-step",
            "1e-3",
        ],
        "distance.output.schema.json",
    );
    assert!((checked["value"].as_f64().unwrap() - 0.25).abs() < 1e-9);
    assert!(checked["gap"].as_f64().unwrap() <= 2e-3);
}

#[test]
fn infinite_distance_serializes_as_null() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(scenario("two_point.json"))
        .unwrap()
        .replace("4.0", "0.0")
        .replace("2.0", "0.0");
    let t = write(&dir, "massless.json", &text);
    let doc = ok_json(
        &[
            "distance",
            "--triple",
            arg(&t),
            "--state-a",
            "0",
            "--state-b",
            "1",
        ],
        "distance.output.schema.json",
    );
    assert_eq!(doc["value"], Value::Null);
    assert_eq!(doc["infinite"], true);
}

#[test]
fn causal_identical_events_same_sheet() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "same.json",
        r#"{"eventA": {"t": 1.0, "x": [0.5, 0.0, 2.0]}, "eventB": {"t": 1.0, "x": [0.5, 0.0, 2.0]}, "sheets": [1, 1], "m": [1.0, 0.0]}"#,
    );
    let doc = ok_json(
        &["causal", "--input", arg(&input)],
        "causal.output.schema.json",
    );
    assert_eq!(doc["related"], true);
    assert_eq!(doc["proper_time"].as_f64(), Some(0.0));
}

#[test]
fn causal_scenarios() {
    let pure = ok_json(
        &["causal", "--input", arg(&scenario("causal_pure.json"))],
        "causal.output.schema.json",
    );
    assert_eq!(pure["related"], true);
    assert!((pure["threshold"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    let mixed = ok_json(
        &["causal", "--input", arg(&scenario("causal_mixed.json"))],
        "causal.output.schema.json",
    );
    assert_eq!(mixed["L2m"], Value::Null);
    // |arcsin √0.75 − arcsin √0.25| = π/3 − π/6.
    assert!((mixed["threshold"].as_f64().unwrap() - std::f64::consts::PI / 6.0).abs() < 1e-14);
}

#[test]
fn cone_scenarios() {
    let affine = ok_json(
        &["cone", "--input", arg(&scenario("cone_affine.json"))],
        "cone.output.schema.json",
    );
    assert_eq!(affine["causal"], true);
    let two = ok_json(
        &["cone", "--input", arg(&scenario("cone_two_sheet.json"))],
        "cone.output.schema.json",
    );
    assert_eq!(two["causal"], true);
    assert_eq!(two["samples"], 81);
    let dir = TempDir::new().unwrap();
    let spatial = write(&dir, "x.json", r#"{"k": [0.0, 1.0, 0.0, 0.0]}"#);
    assert_eq!(
        ok_json(
            &["cone", "--input", arg(&spatial)],
            "cone.output.schema.json"
        )["causal"],
        false
    );
}

#[test]
fn classify_on_shell_mode() {
    let doc = ok_json(
        &["classify", "--input", arg(&scenario("classify.json"))],
        "classify.output.schema.json",
    );
    assert_eq!(doc["class"], "Harmonic");
    assert_eq!(doc["on_shell_E"].as_f64(), Some(5.0));
}

#[test]
fn tolerance_flag_reaches_classification() {
    let dir = TempDir::new().unwrap();
    fs::copy(scenario("two_point_m4.json"), dir.path().join("t.json")).unwrap();
    let input = write(
        &dir,
        "c.json",
        r#"{"triple_file": "t.json", "E": 5.0000001, "p": [3.0, 0.0, 0.0], "internal_index": 1}"#,
    );
    let strict = ok_json(
        &["classify", "--input", arg(&input)],
        "classify.output.schema.json",
    );
    assert_eq!(strict["class"], "Causal");
    let loose = ok_json(
        &["--tolerance", "1e-5", "classify", "--input", arg(&input)],
        "classify.output.schema.json",
    );
    assert_eq!(loose["class"], "Harmonic");
}

#[test]
fn fluctuate_matches_closed_form() {
    for name in ["fluctuate_vev.json", "fluctuate_doublet.json"] {
        let doc = ok_json(
            &["fluctuate", "--input", arg(&scenario(name))],
            "fluctuate.output.schema.json",
        );
        let (num, closed) = (
            doc["trace_phi_sq"].as_f64().unwrap(),
            doc["closed_form"].as_f64().unwrap(),
        );
        assert!((num - closed).abs() < 1e-12, "{name}: {num} vs {closed}");
        assert!(doc["max_abs_diff"].as_f64().unwrap() < 1e-14);
    }
    let vev = ok_json(
        &["fluctuate", "--input", arg(&scenario("fluctuate_vev.json"))],
        "fluctuate.output.schema.json",
    );
    assert!((vev["closed_form"].as_f64().unwrap() - 2.0 * 3.1f64.powi(2)).abs() < 1e-12);
}

#[test]
fn ew_dispersion_residual_vanishes() {
    let doc = ok_json(
        &[
            "ew-dispersion",
            "--input",
            arg(&scenario("ew_dispersion.json")),
        ],
        "ew-dispersion.output.schema.json",
    );
    assert!(doc["residual"].as_f64().unwrap().abs() < 1e-10);
    let expected = (0.09f64 + 1.0 + 0.25 + 2.05f64.powi(2)).sqrt();
    assert!((doc["E_on_shell"].as_f64().unwrap() - expected).abs() < 1e-12);
}

#[test]
fn validate_reports_checks() {
    for name in ["two_point.json", "electroweak.json"] {
        let doc = ok_json(
            &["validate", "--triple", arg(&scenario(name))],
            "validate.output.schema.json",
        );
        assert_eq!(doc["passed"], true, "{name}");
    }
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"dim_H": 2, "generators": [[[[1,0],[0,0]],[[0,0],[1,0]]]], "D_F": [[[0,0],[1,0]],[[2,0],[0,0]]]}"#,
    );
    let doc = ok_json(
        &["validate", "--triple", arg(&bad)],
        "validate.output.schema.json",
    );
    assert_eq!(doc["passed"], false);
    assert_eq!(doc["checks"][0]["name"], "dirac_hermitian");
    assert_eq!(doc["checks"][0]["status"], "fail");
}

#[test]
fn lightcone_csv() {
    let out = run(&[
        "lightcone-scan",
        "--m",
        "1",
        "--t-max",
        "3",
        "--r-max",
        "1",
        "--steps",
        "4",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,r,sheet_crossing_allowed"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 25);
    // Time 3 at r = 0 exceeds the threshold π/2; time 0.75 does not.
    assert!(rows.contains(&vec!["3", "0", "true"]));
    assert!(rows.contains(&vec!["0.75", "0", "false"]));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let garbage = write(&dir, "g.json", "{ not json");
    assert_eq!(
        failing(&["causal", "--input", arg(&garbage)], 2)["error"],
        "MalformedInput"
    );
    let unknown = write(
        &dir,
        "u.json",
        r#"{"eventA": {"t": 0, "x": [0,0,0]}, "eventB": {"t": 1, "x": [0,0,0]}, "sheets": [0, 0], "m": 1, "extra": 3}"#,
    );
    failing(&["causal", "--input", arg(&unknown)], 2);
    let both = write(&dir, "b.json", r#"{"m_e": 1, "h1": 0.5, "v": 2}"#);
    failing(&["fluctuate", "--input", arg(&both)], 2);
    failing(
        &[
            "distance",
            "--triple",
            arg(&scenario("two_point.json")),
            "--state-a",
            "x",
            "--state-b",
            "1",
        ],
        2,
    );
    failing(&["no-such-command"], 2);
    failing(
        &[
            "--tolerance",
            "-1",
            "cone",
            "--input",
            arg(&scenario("cone_affine.json")),
        ],
        2,
    );
}

#[test]
fn domain_errors_exit_one() {
    let err = failing(
        &[
            "distance",
            "--triple",
            arg(&scenario("electroweak.json")),
            "--state-a",
            "0",
            "--state-b",
            "1",
        ],
        1,
    );
    assert_eq!(err["error"], "UnsupportedAlgebra");
    let err = failing(
        &[
            "distance",
            "--triple",
            arg(&scenario("two_point.json")),
            "--state-a",
            "0.7,0.7",
            "--state-b",
            "1",
        ],
        1,
    );
    assert_eq!(err["error"], "StateError");
    let dir = TempDir::new().unwrap();
    fs::copy(scenario("two_point.json"), dir.path().join("t.json")).unwrap();
    let null = write(
        &dir,
        "n.json",
        r#"{"triple_file": "t.json", "E": 1.0, "p": [0, 0, 0], "internal_index": 0, "spinor": [1, 0, 1, 0]}"#,
    );
    assert_eq!(
        failing(&["classify", "--input", arg(&null)], 1)["error"],
        "KreinNullError"
    );
    let state = write(
        &dir,
        "s.json",
        r#"{"m_e": 1, "v": 2, "p": [0, 0, 1], "state": "muon"}"#,
    );
    assert_eq!(
        failing(&["ew-dispersion", "--input", arg(&state)], 1)["error"],
        "StateError"
    );
    let xi = write(
        &dir,
        "x.json",
        r#"{"eventA": {"t": 0, "x": [0,0,0]}, "eventB": {"t": 1, "x": [0,0,0]}, "xis": [0.5, 1.5], "m": 1}"#,
    );
    assert_eq!(
        failing(&["causal", "--input", arg(&xi)], 1)["error"],
        "DomainError"
    );
}

#[test]
fn outputs_are_deterministic_and_respect_output_flag() {
    let t = scenario("two_point.json");
    let args = [
        "--seed",
        "7",
        "distance",
        "--triple",
        arg(&t),
        "--state-a",
        "0.3,0.7",
        "--state-b",
        "0.9,0.1",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("result.json");
    let mut with_output = args.to_vec();
    with_output.extend(["--output", arg(&out)]);
    let written = run(&with_output);
    assert!(written.status.success() && written.stdout.is_empty());
    assert_eq!(fs::read(&out).unwrap(), first.stdout);
}

#[test]
fn scenario_inputs_match_their_schemas() {
    let pairs = [
        ("triple.schema.json", "two_point.json"),
        ("triple.schema.json", "two_point_m4.json"),
        ("triple.schema.json", "electroweak.json"),
        ("causal.input.schema.json", "causal_pure.json"),
        ("causal.input.schema.json", "causal_mixed.json"),
        ("cone.input.schema.json", "cone_affine.json"),
        ("cone.input.schema.json", "cone_two_sheet.json"),
        ("classify.input.schema.json", "classify.json"),
        ("fluctuate.input.schema.json", "fluctuate_vev.json"),
        ("fluctuate.input.schema.json", "fluctuate_doublet.json"),
        ("ew-dispersion.input.schema.json", "ew_dispersion.json"),
    ];
    for (schema, file) in pairs {
        let doc: Value =
            serde_json::from_str(&fs::read_to_string(scenario(file)).unwrap()).unwrap();
        schema_check(schema, &doc);
    }
}

//! End-to-end tests of the `strata` binary: exit codes, report shape,
//! determinism, and the load-time error classes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("models")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn reports_of(output: &Output) -> serde_json::Value {
    let envelope: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("stdout is JSON");
    envelope["reports"].clone()
}

#[test]
fn boy_fixture_reports_triple_point() {
    let out = run(&["--input", &fixture("boy.json")]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let reports = reports_of(&out);
    assert_eq!(reports[0]["result"]["class"]["numbers"]["[]"], "1");
    assert_eq!(reports[0]["result"]["class"]["dim"], 0);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = run(&["--input", &fixture("products.json"), "--seed", "9"]);
    let b = run(&["--input", &fixture("products.json"), "--seed", "9"]);
    assert!(a.status.success() && b.status.success());
    let ra = serde_json::to_string(&reports_of(&a)).unwrap();
    let rb = serde_json::to_string(&reports_of(&b)).unwrap();
    assert_eq!(ra, rb, "reports must be byte-identical for identical inputs");
}

#[test]
fn missing_input_is_usage_error() {
    let out = run(&["--input", "/nonexistent/model.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_flag_is_usage_error() {
    let out = run(&["--input", &fixture("boy.json"), "--field", "R"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["--bogus-flag"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_json_is_parse_error() {
    let dir = std::env::temp_dir();
    let path = dir.join("strata-truncated.json");
    std::fs::write(&path, "{ \"spaces\": {").unwrap();
    let out = run(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse error"), "stderr: {err}");
}

#[test]
fn odd_rational_generator_is_invariant_violation() {
    let dir = std::env::temp_dir();
    let path = dir.join("strata-odd-gen.json");
    std::fs::write(
        &path,
        r#"{
          "spaces": {
            "bad": {
              "field": "Q",
              "generators": [{ "name": "a", "degree": 1, "nilpotency": 3 }],
              "dim": 2
            }
          }
        }"#,
    )
    .unwrap();
    let out = run(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("RAT algebras must be evenly graded"), "stderr: {err}");
}

#[test]
fn dangling_bundle_reference_names_the_key() {
    let dir = std::env::temp_dir();
    let path = dir.join("strata-dangling.json");
    std::fs::write(
        &path,
        r#"{
          "spaces": {
            "s2": {
              "field": "Q",
              "generators": [{ "name": "s", "degree": 2, "nilpotency": 2 }],
              "dim": 2
            }
          },
          "immersions": {
            "f": { "space": "s2", "codim": 2, "normal": "missing" }
          }
        }"#,
    )
    .unwrap();
    let out = run(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("missing"), "stderr must name the key: {err}");
}

#[test]
fn output_file_and_no_verify() {
    let dir = std::env::temp_dir();
    let path = dir.join("strata-out.json");
    let out = run(&[
        "--input",
        &fixture("products.json"),
        "--output",
        path.to_str().unwrap(),
        "--no-verify",
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let envelope: serde_json::Value = serde_json::from_str(&text).unwrap();
    // Identity assertions were skipped, so no check entries appear.
    for report in envelope["reports"].as_array().unwrap() {
        assert!(report["checks"].as_array().unwrap().is_empty());
    }
}

#[test]
fn check_suites_run_from_model_files() {
    let out = run(&["--input", &fixture("checks.json")]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let reports = reports_of(&out);
    for report in reports.as_array().unwrap() {
        assert_eq!(report["result"]["failed"], 0);
        for check in report["checks"].as_array().unwrap() {
            assert_eq!(check["pass"], true);
        }
    }
}

#[test]
fn class_product_field_override() {
    let dir = std::env::temp_dir();
    let path = dir.join("strata-f2-product.json");
    std::fs::write(
        &path,
        r#"{
          "commands": [{
            "op": "class-product",
            "a": { "dim": 2, "numbers": { "[1,1]": "1", "[2]": "1" } },
            "b": { "dim": 2, "numbers": { "[1,1]": "1", "[2]": "1" } }
          }]
        }"#,
    )
    .unwrap();
    // Over F2 the square of [RP^2] has the numbers of RP^2 x RP^2.
    let out = run(&["--input", path.to_str().unwrap(), "--field", "F2"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let reports = reports_of(&out);
    let numbers = &reports[0]["result"]["class"]["numbers"];
    // w(RP^2 x RP^2) = (1+a+a^2)(1+b+b^2): w_4 = a^2 b^2 and
    // w_2^2 = (ab + a^2 + b^2)^2 = a^2 b^2 pair to 1; the splittings of
    // [2,1,1] (four) and [1,1,1,1] (six) cancel mod 2.
    assert_eq!(numbers["[2,2]"], "1");
    assert_eq!(numbers["[4]"], "1");
    assert!(numbers.get("[2,1,1]").is_none());
    assert!(numbers.get("[1,1,1,1]").is_none());

    // The rational analogue lives in dimension 8 (class degrees are 4w
    // over Q) and keeps the cross terms with their counts.
    let qpath = dir.join("strata-q-product.json");
    std::fs::write(
        &qpath,
        r#"{
          "commands": [{
            "op": "class-product",
            "a": { "dim": 8, "numbers": { "[1,1]": "1", "[2]": "1" } },
            "b": { "dim": 8, "numbers": { "[1,1]": "1", "[2]": "1" } }
          }]
        }"#,
    )
    .unwrap();
    let out = run(&["--input", qpath.to_str().unwrap(), "--field", "Q"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let reports = reports_of(&out);
    let numbers = &reports[0]["result"]["class"]["numbers"];
    assert_eq!(numbers["[2,2]"], "3");
    assert_eq!(numbers["[2,1,1]"], "4");
    assert_eq!(numbers["[1,1,1,1]"], "6");

    // The F2 literal is rejected over Q: a dimension-2 rational class
    // cannot carry weight-2 partitions.
    let out = run(&["--input", path.to_str().unwrap(), "--field", "Q"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_usage_error() {
    let dir = std::env::temp_dir();
    let path = dir.join("strata-bad-suite.json");
    std::fs::write(&path, r#"{ "commands": [{ "op": "check", "suite": "nope" }] }"#).unwrap();
    let out = run(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn command_echo_reparses_to_the_same_reports() {
    // Semantic idempotence: the command echoes in a report re-execute to
    // the same reports.
    use strata::cli::exec::{execute, Command as Cmd, ExecOptions};
    use strata::cli::model::load_model;

    let model = load_model(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models/products.json").as_path()).unwrap();
    let opts = ExecOptions::default();
    for command in &model.commands {
        let first = execute(&model, command, &opts).unwrap();
        let echoed: Cmd =
            serde_json::from_value(serde_json::to_value(&first.command).unwrap()).unwrap();
        let second = execute(&model, &echoed, &opts).unwrap();
        assert_eq!(
            serde_json::to_string(&first.result).unwrap(),
            serde_json::to_string(&second.result).unwrap()
        );
    }
}

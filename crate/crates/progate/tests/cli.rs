//! End-to-end CLI tests against the compiled binary: exit codes, output
//! sinks, and validation of every command's JSON payload against the
//! schema shipped in docs/.

use std::process::{Command, Output};

use serde_json::Value;

const SCHEMA: &str = include_str!("../docs/cli-report.schema.json");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_progate"))
        .args(args)
        .output()
        .expect("failed to launch the CLI binary")
}

fn run_json(args: &[&str]) -> Value {
    let output = run(args);
    assert!(
        output.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is valid JSON")
}

#[test]
fn every_command_emits_schema_valid_json() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["simulate", "--n", "2", "--trials", "200"],
        vec!["exact", "--n", "3"],
        vec!["adaptive", "--trials", "200"],
        vec!["optimal1q"],
        vec!["bound", "--n", "2"],
        vec!["entropy", "--n", "3"],
        vec!["remote", "--trials", "50"],
        vec!["avg-length"],
    ];
    for args in invocations {
        let payload = run_json(&args);
        let mut errors = Vec::new();
        validate(&schema, &payload, "$", &mut errors);
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        assert_eq!(payload["schema_version"], Value::from(1));
        assert_eq!(payload["command"].as_str().unwrap(), args[0]);
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["simulate", "--n", "0"],
        vec!["simulate", "--n", "21"],
        vec!["exact", "--alpha", "not-a-number"],
        vec!["frobnicate"],
        vec![],
    ] {
        let output = run(&args);
        assert_eq!(
            output.status.code(),
            Some(1),
            "expected usage failure for {args:?}"
        );
        assert!(output.stdout.is_empty(), "partial output for {args:?}");
    }
}

#[test]
fn capacity_errors_exit_three() {
    for args in [vec!["exact", "--n", "17"], vec!["entropy", "--n", "11"]] {
        let output = run(&args);
        assert_eq!(output.status.code(), Some(3), "args {args:?}");
        assert!(output.stdout.is_empty());
    }
}

#[test]
fn unwritable_sink_exits_two_without_partial_output() {
    let path = "/nonexistent-progate-dir/report.json";
    let output = run(&["exact", "--n", "2", "--out", path]);
    assert_eq!(output.status.code(), Some(2));
    assert!(!std::path::Path::new(path).exists());
}

#[test]
fn out_flag_writes_the_same_payload_as_stdout() {
    let dir = std::env::temp_dir().join("progate-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("exact.json");
    let _ = std::fs::remove_file(&path);

    let piped = run(&["exact", "--n", "4", "--seed", "9"]);
    assert!(piped.status.success());
    let sunk = run(&[
        "exact",
        "--n",
        "4",
        "--seed",
        "9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(sunk.status.success());
    assert!(sunk.stdout.is_empty());

    let from_file = std::fs::read(&path).unwrap();
    let strip = |bytes: &[u8]| -> String {
        let mut value: Value = serde_json::from_slice(bytes).unwrap();
        value.as_object_mut().unwrap().remove("duration_seconds");
        serde_json::to_string(&value).unwrap()
    };
    assert_eq!(strip(&piped.stdout), strip(&from_file));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn help_and_version_exit_zero() {
    for args in [
        vec!["--help"],
        vec!["--version"],
        vec!["simulate", "--help"],
    ] {
        let output = run(&args);
        assert_eq!(output.status.code(), Some(0), "args {args:?}");
        assert!(!output.stdout.is_empty());
    }
}

#[test]
fn csv_payloads_have_headers_and_parse_as_numbers() {
    let output = run(&["simulate", "--n", "2", "--trials", "100", "--format", "csv"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(header, "n,alpha,trials,seed,success_rate,standard_error");
    let row = lines.next().unwrap();
    assert_eq!(row.split(',').count(), header.split(',').count());
    for field in row.split(',') {
        field.parse::<f64>().unwrap();
    }
}

#[test]
fn remote_report_matches_expected_costs() {
    let payload = run_json(&["remote", "--trials", "400", "--seed", "2"]);
    let results = &payload["results"];
    assert!((results["expected_ebits"].as_f64().unwrap() - 6.0).abs() < 1e-12);
    assert!((results["expected_cbits"].as_f64().unwrap() - 6.0).abs() < 1e-12);
    assert_eq!(results["runs_succeeded"].as_f64().unwrap(), 400.0);
    let mean = results["mean_ebits"].as_f64().unwrap();
    // 4 standard errors at 400 trials.
    assert!(
        (mean - 6.0).abs() < 4.0 * (6.0f64 / 400.0).sqrt(),
        "mean={mean}"
    );
    let min_fidelity = results["min_success_fidelity"].as_f64().unwrap();
    assert!((min_fidelity - 1.0).abs() < 1e-10);
}

/// Minimal JSON-Schema checker covering the keywords the shipped schema
/// uses: type, enum, required, properties, additionalProperties, items.
fn validate(schema: &Value, instance: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(expect) = schema.get("type").and_then(Value::as_str) {
        let ok = match expect {
            "object" => instance.is_object(),
            "array" => instance.is_array(),
            "string" => instance.is_string(),
            "boolean" => instance.is_boolean(),
            "number" => instance.is_number(),
            "integer" => {
                instance.is_i64()
                    || instance.is_u64()
                    || instance.as_f64().is_some_and(|f| f.fract() == 0.0)
            }
            other => {
                errors.push(format!("{path}: unsupported schema type {other}"));
                return;
            }
        };
        if !ok {
            errors.push(format!("{path}: expected type {expect}, got {instance}"));
            return;
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(instance) {
            errors.push(format!("{path}: {instance} not in enum {allowed:?}"));
        }
    }
    if let Some(object) = instance.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !object.contains_key(key) {
                    errors.push(format!("{path}: missing required field {key}"));
                }
            }
        }
        let properties = schema.get("properties").and_then(Value::as_object);
        for (key, value) in object {
            let child_path = format!("{path}.{key}");
            if let Some(child_schema) = properties.and_then(|p| p.get(key)) {
                validate(child_schema, value, &child_path, errors);
            } else {
                match schema.get("additionalProperties") {
                    Some(Value::Bool(false)) => {
                        errors.push(format!("{path}: unexpected field {key}"));
                    }
                    Some(extra_schema) if extra_schema.is_object() => {
                        validate(extra_schema, value, &child_path, errors);
                    }
                    _ => {}
                }
            }
        }
    }
    if let Some(array) = instance.as_array() {
        if let Some(item_schema) = schema.get("items") {
            for (index, item) in array.iter().enumerate() {
                validate(item_schema, item, &format!("{path}[{index}]"), errors);
            }
        }
    }
}

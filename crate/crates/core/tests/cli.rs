use std::path::Path;
use std::process::Command;

use serde_json::Value;

use qreal::cli::{cmd_ingest, cmd_sample, run, RunConfig, EXIT_COMPUTATION, EXIT_NOT_ABOVE, EXIT_OK, EXIT_VALIDATION};
use qreal::qsim::NoiseModel;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qreal(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("qreal").chain(args.iter().copied()), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = qreal(&all);
    assert!(o.stderr.is_empty(), "{}", o.stderr);
    (o.code, serde_json::from_str(&o.stdout).unwrap())
}

fn certificate(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("certificates").join(name).display().to_string()
}

#[test]
fn exact_default_is_ideal() {
    let (code, v) = json(&["exact"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["F"], 18.0);
    let terms = v["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 72);
    assert!(terms.iter().all(|t| t["signed_value"] == 0.25));
    assert_eq!(v["result"]["shots_per_setting"], "exact");
    assert_eq!(v["no_signaling"]["passed"], true);
}

#[test]
fn exact_native_matches() {
    let (_, plain) = json(&["exact"]);
    let (code, native) = json(&["exact", "--native"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(plain["result"], native["result"]);
    assert_eq!(native["config"]["native"], true);
}

#[test]
fn single_permutation_gives_three() {
    let (code, v) = json(&["exact", "--permutations", "123"]);
    assert_eq!(code, EXIT_NOT_ABOVE);
    assert_eq!(v["result"]["F"], 3.0);
    assert_eq!(v["result"]["terms"].as_array().unwrap().len(), 12);
}

#[test]
fn floats_carry_fifteen_digits() {
    let o = qreal(&["--json", "bounds", "real-cubic"]);
    assert!(o.stdout.contains("\"value\": 14.6969384566991"), "{}", o.stdout);
    assert!(o.stdout.contains("\"bound_exact\": \"6*sqrt6\""));
    let o = qreal(&["bounds", "real-quadratic"]);
    assert!(o.stdout.contains("real-quadratic: 14.8788944925309"), "{}", o.stdout);
    assert!(o.stdout.contains("x = 2.47981574875515"));
}

#[test]
fn bounds_kinds() {
    let (code, v) = json(&["bounds", "classical"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["value"], 12.0);
    assert_eq!(v["detail"]["strategies_examined"], 262_144);
    let (_, v) = json(&["bounds", "complex"]);
    assert_eq!(v["value"], 18.0);
    let (_, v) = json(&["bounds", "real-cubic"]);
    assert_eq!(v["detail"]["valid"], true);
    assert_eq!(v["detail"]["residual_class"], serde_json::json!(["ijiki", "ijk"]));
    let (_, v) = json(&["bounds", "sample-real", "--trials", "2000", "--seed", "4"]);
    assert!(v["value"].as_f64().unwrap() <= 14.696938456699067);
    let (_, v) = json(&["bounds", "sample-complex", "--trials", "300"]);
    assert!(v["value"].as_f64().unwrap() > 17.5);
}

#[test]
fn certificate_files() {
    let (code, v) = json(&["bounds", "certificate", "--certificate", &certificate("cubic.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["detail"]["bound_exact"], "6*sqrt6");
    let (_, v) = json(&["bounds", "certificate", "--certificate", &certificate("quadratic.json")]);
    // 3(3 + x² + 6t² + 3/(2t²))/(x + 1 − t²) at t = 3/5, x = 5/2
    assert_eq!(v["detail"]["bound_exact"], "4673/314");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name": "b", "squares": [{"terms": [["14", "1"]], "sweep": "none"}]}"#).unwrap();
    let o = qreal(&["bounds", "certificate", "--certificate", bad.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_VALIDATION);
    assert!(o.stderr.contains("squares[0]"), "{}", o.stderr);
    assert_eq!(qreal(&["bounds", "certificate"]).code, EXIT_VALIDATION);
}

#[test]
fn sample_is_reproducible_byte_for_byte() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = |d: &Path| {
        vec![
            "--out".to_string(),
            d.display().to_string(),
            "sample".into(),
            "--shots".into(),
            "3000".into(),
            "--seed".into(),
            "17".into(),
            "--noise-2q".into(),
            "0.04".into(),
            "--noise-readout".into(),
            "0.01".into(),
        ]
    };
    for d in [a.path(), b.path()] {
        let args = args(d);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(qreal(&refs).code, EXIT_OK);
    }
    for file in ["result.json", "terms.csv", "counts.json"] {
        let x = std::fs::read(a.path().join(file)).unwrap();
        let y = std::fs::read(b.path().join(file)).unwrap();
        assert_eq!(x, y, "{file}");
    }
    let csv = std::fs::read_to_string(a.path().join("terms.csv")).unwrap();
    assert!(csv.starts_with("eta,z,b,signed_value\n"));
    assert_eq!(csv.lines().count(), 73);
}

#[test]
fn sample_then_ingest_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = RunConfig::sample(4000, 5);
    config.noise = NoiseModel::depolarizing(0.07);
    config.out = Some(dir.path().to_path_buf());
    let sampled = cmd_sample(&config).unwrap();
    let path = dir.path().join("counts.json");
    std::fs::write(&path, serde_json::to_string(sampled.counts.as_ref().unwrap()).unwrap()).unwrap();
    let ingested = cmd_ingest(&RunConfig::ingest(path.clone())).unwrap();
    assert_eq!(sampled.result.f.to_bits(), ingested.result.f.to_bits());
    assert_eq!(sampled.result.sigma.to_bits(), ingested.result.sigma.to_bits());
    assert_eq!(sampled.result.terms, ingested.result.terms);

    // the written counts file reproduces the same numbers through the CLI
    let o = tempfile::tempdir().unwrap();
    qreal(&["--out", o.path().to_str().unwrap(), "sample", "--shots", "4000", "--seed", "5", "--noise-2q", "0.07"]);
    let (_, v) = json(&["ingest", o.path().join("counts.json").to_str().unwrap()]);
    let result: Value = serde_json::from_str(&std::fs::read_to_string(o.path().join("result.json")).unwrap()).unwrap();
    assert_eq!(v["result"], result["result"]);
    assert_eq!(v["sigma_distance"], result["sigma_distance"]);
}

#[test]
fn ingest_reports_sigma_distance() {
    let dir = tempfile::tempdir().unwrap();
    qreal(&["--out", dir.path().to_str().unwrap(), "sample", "--shots", "5000", "--noise-2q", "0.02"]);
    let counts = dir.path().join("counts.json");
    let (code, v) = json(&["ingest", counts.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let f = v["result"]["F"].as_f64().unwrap();
    let sigma = v["result"]["sigma"].as_f64().unwrap();
    let d = v["sigma_distance"].as_f64().unwrap();
    assert!(((f - 14.696938456699067) / sigma - d).abs() < 1e-9 * d.abs());

    let (_, c) = json(&["ingest", counts.to_str().unwrap(), "--bound", "classical"]);
    assert!(c["sigma_distance"].as_f64().unwrap() > d);
    let (_, s) = json(&["ingest", counts.to_str().unwrap(), "--shots", "20000"]);
    let ratio = sigma / s["result"]["sigma"].as_f64().unwrap();
    assert!((ratio - 2.0).abs() < 1e-9);
    assert_eq!(s["result"]["F"], v["result"]["F"]);
}

#[test]
fn missing_setting_is_named() {
    let dir = tempfile::tempdir().unwrap();
    qreal(&["--out", dir.path().to_str().unwrap(), "sample", "--shots", "100"]);
    let path = dir.path().join("counts.json");
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let removed = file["records"].as_array_mut().unwrap().remove(7);
    std::fs::write(&path, file.to_string()).unwrap();
    let o = qreal(&["ingest", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_VALIDATION);
    let s = &removed["setting"];
    let expected = format!("(x={}, eta={}, z={})", s["x"], s["eta"].as_str().unwrap(), s["z"]);
    assert!(o.stderr.contains(&expected), "{} lacks {expected}", o.stderr);
}

#[test]
fn schema_errors_are_validation_failures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"bit_order\": \"apqc\",\n \"records\": [{\"setting\": {\"x\": 1, \"eta\": \"112\", \"z\": 1}, \"shots\": 1, \"counts\": {}}]}").unwrap();
    let o = qreal(&["ingest", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_VALIDATION);
    assert!(o.stderr.contains("records[0].setting.eta"), "{}", o.stderr);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);

    std::fs::write(&path, r#"{"bit_order": "cqpa", "records": []}"#).unwrap();
    assert_eq!(qreal(&["ingest", path.to_str().unwrap()]).code, EXIT_VALIDATION);
}

#[test]
fn bad_flags_are_validation_failures() {
    assert_eq!(qreal(&["sample", "--noise-2q", "1.5"]).code, EXIT_VALIDATION);
    assert_eq!(qreal(&["sample", "--noise-readout", "-0.1"]).code, EXIT_VALIDATION);
    assert_eq!(qreal(&["sample", "--shots", "0"]).code, EXIT_VALIDATION);
    assert_eq!(qreal(&["sample", "--bound", "tight"]).code, EXIT_VALIDATION);
    assert_eq!(qreal(&["bounds", "npa"]).code, EXIT_VALIDATION);
    assert_eq!(qreal(&["ingest", "/no/such/file.json"]).code, EXIT_COMPUTATION);
}

#[test]
fn verify_gates_and_negative_control() {
    let (code, v) = json(&["verify-gates"]);
    assert_eq!(code, EXIT_OK);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true && c["deviation"].as_f64().unwrap() < 1e-12));

    let (code, v) = json(&["verify-gates", "--inject-cr-sign-error"]);
    assert_eq!(code, EXIT_NOT_ABOVE);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["ECR↓ = CR⁻ (X⊗I) CR⁺"]);
}

#[test]
fn binary_propagates_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qreal");
    let ok = Command::new(bin).args(["exact"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("F = 18"));
    let status = Command::new(bin).args(["exact", "--permutations", "321"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_NOT_ABOVE));
    let status = Command::new(bin).args(["sample", "--noise-2q", "9"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_VALIDATION));
    assert!(String::from_utf8_lossy(&status.stderr).contains("error:"));
}

//! End-to-end checks of the `ruo` binary: outputs, manifests, determinism
//! and error reporting.

use std::path::Path;
use std::process::{Command, Output};

fn ruo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ruo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn spectrum_reproduces_reference_rate_and_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("spec.csv");
    let result = ruo(&[
        "spectrum",
        "--d", "3",
        "--words", "h,UV",
        "--phi", "2.86002806",
        "--alpha-abs", "0.74921865",
        "--alpha-arg", "3.66908666",
        "--beta-arg", "2.32545709",
        "--weights", "0.49097422",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "stderr: {}", stderr(&result));

    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("re,im,modulus,in_sigma1\n"));
    assert_eq!(csv.lines().count(), 1 + 81);

    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("summary.json")).unwrap())
            .unwrap();
    let lambda = summary["lambda_max"].as_f64().unwrap();
    assert!((lambda - 0.67402461).abs() < 1e-6, "lambda {lambda}");
    assert_eq!(summary["stationary"], serde_json::Value::Bool(true));
    assert_eq!(summary["fixed_space_dim"], serde_json::json!(2));

    // manifest checksums match the bytes on disk
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("spec.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    let outputs = manifest["outputs"].as_object().unwrap();
    assert_eq!(outputs.len(), 2);
    for (path, checksum) in outputs {
        let bytes = std::fs::read(Path::new(path)).unwrap();
        let digest = {
            use sha2::{Digest, Sha256};
            let d = Sha256::digest(&bytes);
            d.iter().map(|b| format!("{b:02x}")).collect::<String>()
        };
        assert_eq!(&digest, checksum.as_str().unwrap());
    }
    assert_eq!(manifest["config"]["d"], serde_json::json!("3"));
    assert_eq!(manifest["config"]["words"], serde_json::json!("h,UV"));
}

#[test]
fn optimize_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    for out in [&out_a, &out_b] {
        let result = ruo(&[
            "optimize",
            "--d", "2",
            "--words", "h,UV",
            "--n-ran", "10",
            "--n-opt", "2",
            "--seed", "99",
            "--out", out.to_str().unwrap(),
        ]);
        assert!(result.status.success(), "stderr: {}", stderr(&result));
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "same seed must give identical output bytes");

    // manifests agree apart from the timing fields
    let mut ma: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.csv.manifest.json")).unwrap()).unwrap();
    let mut mb: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("b.csv.manifest.json")).unwrap()).unwrap();
    for m in [&mut ma, &mut mb] {
        let obj = m.as_object_mut().unwrap();
        obj.remove("timestamp_unix_seconds");
        obj.remove("wall_clock_seconds");
        obj.remove("command_line"); // differs in the --out path
    }
    ma["outputs"] = serde_json::json!(ma["outputs"].as_object().unwrap().values().collect::<Vec<_>>());
    mb["outputs"] = serde_json::json!(mb["outputs"].as_object().unwrap().values().collect::<Vec<_>>());
    assert_eq!(ma["config"], mb["config"]);
    assert_eq!(ma["outputs"], mb["outputs"]);
    assert_eq!(ma["master_seed"], serde_json::json!(99));
}

#[test]
fn different_seeds_differ() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    for (out, seed) in [(&out_a, "1"), (&out_b, "2")] {
        let result = ruo(&[
            "optimize",
            "--d", "2",
            "--words", "h,UV",
            "--n-ran", "5",
            "--n-opt", "1",
            "--seed", seed,
            "--out", out.to_str().unwrap(),
        ]);
        assert!(result.status.success());
    }
    assert_ne!(std::fs::read(&out_a).unwrap(), std::fs::read(&out_b).unwrap());
}

#[test]
fn construct_reports_parse_errors_with_position() {
    let result = ruo(&["construct", "--d", "2", "--words", "hX"]);
    assert_eq!(result.status.code(), Some(2));
    let err = stderr(&result);
    assert!(err.contains("error[parse]"), "stderr: {err}");
    assert!(err.contains("column 2"), "stderr: {err}");
}

#[test]
fn construct_writes_matrix_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mats.csv");
    let result = ruo(&[
        "construct",
        "--d", "2",
        "--words", "h,UV",
        "--alpha-abs", "0.70710678",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "stderr: {}", stderr(&result));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("matrix,row,col,re,im\n"));
    // two 2x2 generator words and two 4x4 lifted Kraus operators
    assert_eq!(csv.lines().count(), 1 + 2 * 4 + 2 * 16);
    assert!(csv.contains("\nUV,"));
    assert!(csv.contains("\nkraus2,"));
}

#[test]
fn converge_refuses_non_stationary_channels() {
    // alpha = 0 puts a genuine −1 eigenvalue on the unit circle
    let result = ruo(&[
        "converge",
        "--d", "2",
        "--words", "h,U,V",
        "--alpha-abs", "0",
        "--weights", "0.3,0.3",
        "--n-max", "5",
    ]);
    assert_eq!(result.status.code(), Some(4));
    assert!(stderr(&result).contains("error[not-stationary]"));
}

#[test]
fn converge_emits_distances_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("conv.csv");
    let result = ruo(&[
        "converge",
        "--d", "2",
        "--words", "h,UV",
        "--phi", "4.41035379",
        "--alpha-abs", "0.93329073",
        "--alpha-arg", "0.01310998",
        "--beta-arg", "4.13663214",
        "--weights", "0.45454826",
        "--n-max", "10",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "stderr: {}", stderr(&result));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "n,distance,bound");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    let d0: f64 = first[1].parse().unwrap();
    assert!((d0 - 14f64.sqrt()).abs() < 1e-9);
    assert_eq!(csv.lines().count(), 1 + 11);
}

#[test]
fn census_builtin_counts() {
    let result = ruo(&["census", "--group", "sl23", "--size", "2"]);
    assert!(result.status.success());
    let out = stdout(&result);
    assert!(out.contains("generating=192"), "stdout: {out}");
    assert!(out.contains("stationary=144"), "stdout: {out}");

    let result = ruo(&["census", "--group", "q8", "--size", "1"]);
    assert!(result.status.success());
    assert!(stdout(&result).contains("generating=0"));
}

#[test]
fn census_closure_spec() {
    let result = ruo(&[
        "census",
        "--group",
        "closure:h,UV@d=2,alpha-abs=0.70710678,phi=0",
        "--size", "1",
    ]);
    assert!(result.status.success(), "stderr: {}", stderr(&result));
    assert!(stdout(&result).contains("order=192"));
}

#[test]
fn census_csv_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.csv");
    let result = ruo(&["census", "--group", "q8", "--size", "2", "--out", out.to_str().unwrap()]);
    assert!(result.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("idx1,idx2,generates,stationary,diagonalizable,optimal_lambda_max\n"));
    assert!(csv.trim_end().ends_with("diagonalizable=0") || csv.contains("# summary:"));
}

#[test]
fn sweep_one_and_two_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let result = ruo(&[
        "sweep",
        "--d", "2",
        "--words", "h,U,V",
        "--grid", "p1=0.1:0.6:8",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "stderr: {}", stderr(&result));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("value,lambda_max\n"));
    assert_eq!(csv.lines().count(), 1 + 8);

    // a grid node that breaks the weight simplex is an infeasible-grid error
    let result = ruo(&["sweep", "--d", "2", "--words", "h,U,V", "--grid", "p1=0.1:0.8:8"]);
    assert_eq!(result.status.code(), Some(3));

    let out2 = dir.path().join("surface.csv");
    let result = ruo(&[
        "sweep",
        "--d", "2",
        "--words", "h,U,V",
        "--grid", "p1=0.1:0.7:4,p2=0.1:0.7:4",
        "--out", out2.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "stderr: {}", stderr(&result));
    let csv = std::fs::read_to_string(&out2).unwrap();
    assert!(csv.starts_with("value1,value2,lambda_max\n"));
    // infeasible corner nodes (p1 + p2 >= 1) are skipped
    let rows = csv.lines().count() - 1;
    assert!(rows > 4 && rows <= 16, "rows {rows}");
}

#[test]
fn sweep_rejects_bad_grids() {
    let result = ruo(&["sweep", "--d", "2", "--words", "h,UV", "--grid", "p1=0:1:0"]);
    assert_eq!(result.status.code(), Some(3));
    let result = ruo(&["sweep", "--d", "2", "--words", "h,UV", "--grid", "q9=0:1:5"]);
    assert_eq!(result.status.code(), Some(3));
    assert!(stderr(&result).contains("error[infeasible]"));
}

#[test]
fn params_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.params");
    std::fs::write(
        &config,
        "d = 3\nwords = h,UV\nphi = 2.86002806\nalpha-abs = 0.74921865\n\
         alpha-arg = 3.66908666\nbeta-arg = 2.32545709\nweights = 0.49097422\n",
    )
    .unwrap();
    let out = dir.path().join("s.csv");
    let result = ruo(&[
        "spectrum",
        "--params", config.to_str().unwrap(),
        "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "stderr: {}", stderr(&result));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("summary.json")).unwrap())
            .unwrap();
    assert!((summary["lambda_max"].as_f64().unwrap() - 0.67402461).abs() < 1e-6);

    // a flag overrides the file value: detuning phi must not change the rate
    let out2 = dir.path().join("s2.csv");
    let result = ruo(&[
        "spectrum",
        "--params", config.to_str().unwrap(),
        "--phi", "0.5",
        "--out", out2.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("s2.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    let phi: f64 = manifest["config"]["phi"].as_str().unwrap().parse().unwrap();
    assert!((phi - 0.5).abs() < 1e-12);
}

#[test]
fn missing_required_settings() {
    let result = ruo(&["spectrum", "--words", "h,UV"]);
    assert_eq!(result.status.code(), Some(3));
    assert!(stderr(&result).contains("missing --d"));
}

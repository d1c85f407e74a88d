use std::path::Path;
use std::process::{Command, Output};

fn automorph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_automorph"))
        .args(args)
        .env_remove("AUTOMORPH_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_json(p: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn series_dumps() {
    let o = automorph(&["series", "--object", "E2", "--order", "5", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "exponent,coefficient\n0,1\n1,-24\n2,-72\n3,-96\n4,-168");

    let o = automorph(&["series", "--object", "theta2", "--order", "3", "--format", "csv"]);
    assert_eq!(stdout(&o).trim(), "exponent,coefficient\n1/4,2\n9/4,2");

    let o = automorph(&["series", "--object", "E4", "--order", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["series"]["terms"][1][1], "240");

    let o = automorph(&["series", "--object", "2F1:1/2,1/2,1", "--order", "3", "--format", "csv"]);
    assert_eq!(stdout(&o).trim(), "exponent,coefficient\n0,1\n1,1/4\n2,9/64");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(automorph(&["series", "--object", "E9"]).status.code(), Some(2));
    assert_eq!(automorph(&["series", "--object", "2F1:1,1,-2", "--order", "3"]).status.code(), Some(1));
    assert_eq!(automorph(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(automorph(&["verify", "--suite", "jacobi", "--z-convention", "both"]).status.code(), Some(2));
    assert_eq!(automorph(&["integrate", "--system", "ramanujan", "--init", "1;2"]).status.code(), Some(2));
    assert_eq!(automorph(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sigma.json");
    let o = automorph(&["verify", "--suite", "sigma-addition", "--samples", "10000", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&out);
    assert_eq!(v["suite"], "sigma-addition");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["checks"][0]["status"], "pass");
    assert_eq!(v["checks"][0]["params"]["n_max"], "10000");
}

#[test]
fn verify_exit_code_follows_the_checks() {
    let run = |z: &str| automorph(&["verify", "--suite", "theorem2-numeric", "--samples", "5", "--z-convention", z]).status.code();
    assert_eq!(run("proof"), Some(0));
    assert_eq!(run("theorem"), Some(1));
}

#[test]
fn config_file_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"seed": 9, "samples": 3}"#).unwrap();
    let o = automorph(&["verify", "--suite", "theorem1-numeric", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 9);
    // flags win over the file
    let o = automorph(&["verify", "--suite", "theorem1-numeric", "--config", cfg.to_str().unwrap(), "--seed", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 4);
    std::fs::write(&cfg, r#"{"sede": 9}"#).unwrap();
    assert_eq!(automorph(&["verify", "--suite", "jacobi", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn integrate_stationary_and_riccati() {
    let o = automorph(&["integrate", "--system", "ramanujan", "--init", "0.5;0.25;0.125", "--path", "0;0.3", "--samples", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["system"], "ramanujan");
    for s in v["samples"].as_array().unwrap() {
        let p = s["state"][0][0].as_f64().unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        assert_eq!(s["jets"][0].as_array().unwrap().len(), 5);
    }

    let o = automorph(&["integrate", "--system", "dh", "--init", "0.4-0.3i;0.4-0.3i;0.4-0.3i", "--path", "0;0.8+0.3i", "--tol", "1e-12"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let w0 = num(&serde_json::json!([0.4, -0.3]));
    for s in v["samples"].as_array().unwrap() {
        let x = num(&s["x"]);
        let exact = w0 / (1.0 + w0 * x);
        assert!((num(&s["state"][1]) - exact).norm() < 1e-8);
    }
}

fn num(v: &serde_json::Value) -> num_complex::Complex64 {
    num_complex::Complex64::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn integrate_into_a_singularity_exits_3_with_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_automorph"))
        .args(["integrate", "--system", "dh", "--init", "-1;-1;-1", "--path", "0;2", "--out", "blowup.json"])
        .env("AUTOMORPH_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let v = read_json(&dir.path().join("blowup.json"));
    assert_eq!(v["status"], "aborted");
    assert!((v["last_x"][0].as_f64().unwrap() - 1.0).abs() < 1e-2);
    assert!(!v["samples"].as_array().unwrap().is_empty());
}

#[test]
fn invert32_reports_every_root() {
    let o = automorph(&["invert32", "--p0", "0.3", "--q0", "1.2+0.3i", "--r0", "0.9-0.2i"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pre = v["preimages"].as_array().unwrap();
    assert_eq!(pre.len(), 3);
    assert!(pre.iter().all(|p| p["certified"] == true));
    let o = automorph(&["invert32", "--p0", "0.3", "--q0", "1.2", "--r0", "-0.5", "--root", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["preimages"].as_array().unwrap().len(), 1);
    assert_eq!(automorph(&["invert32", "--p0", "0", "--q0", "1", "--r0", "1", "--root", "5"]).status.code(), Some(2));
}

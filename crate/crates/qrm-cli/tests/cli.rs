//! End-to-end tests of the `qrm` binary: output formats, determinism,
//! config handling and exit codes.

use std::process::Command;

fn qrm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qrm"))
}

fn run_ok(args: &[&str]) -> String {
    let out = qrm().args(args).output().expect("spawn qrm");
    assert!(
        out.status.success(),
        "qrm {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

/// Strip the runtime_ms field, the one part of the envelope exempt from
/// the determinism contract.
fn strip_runtime(json: &str) -> String {
    json.lines()
        .filter(|l| !l.trim_start().starts_with("\"runtime_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn rb_k2_returns_exact_rational_polynomial() {
    let out = run_ok(&["rb", "--k", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "rb");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    let terms = v["results"][0]["terms"].as_array().unwrap();
    // τ² - (1+2g²)τ + 1/6 + g² + g⁴ + Δ² has 7 monomials
    assert_eq!(terms.len(), 7);
    let has = |tau: u64, g2: u64, d: u64, coeff: &str| {
        terms.iter().any(|t| {
            t["tau_pow"] == tau && t["g2_pow"] == g2 && t["d_pow"] == d && t["coeff"] == coeff
        })
    };
    assert!(has(2, 0, 0, "1"), "{terms:?}");
    assert!(has(1, 1, 0, "-2"));
    assert!(has(0, 0, 1, "1")); // Δ² term
    assert!(has(0, 0, 0, "1/6"));
}

#[test]
fn partition_decoupled_closed_form() {
    let out = run_ok(&[
        "partition", "--g", "0", "--delta", "0.4", "--beta", "1", "--format", "csv",
    ]);
    let line = out.lines().nth(1).unwrap();
    let z: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
    let expect = 2.0 * 0.4f64.cosh() / (1.0 - (-1.0f64).exp());
    assert!((z - expect).abs() < 1e-10 * expect, "{z} vs {expect}");
    // every numeric cell carries a companion error column
    assert!(out.lines().next().unwrap().contains("z_err"));
}

#[test]
fn csv_grid_rows_in_input_order() {
    let out = run_ok(&[
        "kernel", "--t", "0.8", "--x", "0:1:3", "--y", "0.5", "--format", "csv",
    ]);
    let xs: Vec<f64> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(xs, vec![0.0, 0.5, 1.0]);
}

#[test]
fn byte_identical_reruns() {
    let args = [
        "kernel", "--t", "0.9", "--x", "0.3", "--y", "-0.2", "--format", "json",
    ];
    let a = strip_runtime(&run_ok(&args));
    let b = strip_runtime(&run_ok(&args));
    assert_eq!(a, b);
    let args = ["eigs", "--window", "-1.0:3.0", "--step", "0.05", "--format", "csv"];
    assert_eq!(run_ok(&args), run_ok(&args));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(
        &path,
        "[model]\ng = 0.0\ndelta = 0.4\n\n[output]\nformat = \"csv\"\n",
    )
    .unwrap();
    let cfg = path.to_str().unwrap();
    let out = run_ok(&["partition", "--config", cfg, "--beta", "1"]);
    let z: f64 = out.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    let expect = 2.0 * 0.4f64.cosh() / (1.0 - (-1.0f64).exp());
    assert!((z - expect).abs() < 1e-9 * expect);
    // flag overrides config: Δ = 0 turns the partition into the displaced
    // oscillator value
    let out = run_ok(&["partition", "--config", cfg, "--delta", "0", "--beta", "1"]);
    let z: f64 = out.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    let expect = 2.0 / (1.0 - (-1.0f64).exp());
    assert!((z - expect).abs() < 1e-9 * expect);
}

#[test]
fn exit_codes_and_machine_parsable_stderr() {
    // 2: invalid argument
    let out = qrm().args(["partition", "--beta", "-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error="), "{err}");
    // 3: domain error (propagator at a caustic)
    let out = qrm()
        .args(["propagator", "--t", "3.14159265", "--x", "0.1", "--y", "0.1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error=domain"), "{err}");
    // 2: unparsable flags (clap)
    let out = qrm().args(["kernel", "--parity", "sideways"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gfunc_constraint_matches_closed_form() {
    let out = run_ok(&[
        "gfunc", "--mode", "constraint", "--n", "1", "--g", "0.3", "--delta", "0.8",
        "--parity", "plus", "--format", "csv",
    ]);
    let v: f64 = out.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    // (4g² - 1 + Δ²)/(2g) = 0 on the Juddian curve
    assert!(v.abs() < 1e-12, "{v}");
}

#[test]
fn eigs_reports_juddian_classification() {
    let out = run_ok(&[
        "eigs", "--g", "0.3", "--delta", "0.8", "--window", "0.5:1.5", "--step", "0.01",
        "--parity", "minus", "--format", "csv",
    ]);
    assert!(out.contains("Juddian"), "{out}");
}

//! End-to-end tests of the command-line interface: documented examples, exit
//! codes, configuration precedence and deterministic output.

use std::f64::consts::PI;
use std::process::Command;

use gl3_geom_cli::{run, RunOutput};
use serde_json::Value;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const LN_GLAISHER: f64 = 0.248_754_477_033_784_26;

fn gl3(args: &[&str]) -> RunOutput {
    run(std::iter::once("gl3-geom").chain(args.iter().copied()))
}

fn json(out: &RunOutput) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn close(a: &Value, b: f64, tol: f64) -> bool {
    (a.as_f64().unwrap() - b).abs() <= tol
}

#[test]
fn verify_all_identities_passes() {
    let out = gl3(&["verify", "lemmas", "--which", "all", "--samples", "1000", "--seed", "1"]);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["outputs"]["failures"], Value::Array(vec![]));
    assert_eq!(v["outputs"]["passed"], Value::Bool(true));
}

#[test]
fn classify_diagonal_matrix() {
    let out = gl3(&["orbit", "classify", "--matrix", "1,0,0,0,2,0,0,0,3"]);
    assert_eq!(out.exit_code, 0);
    let v = json(&out);
    assert_eq!(v["outputs"]["kind"], "SplitRegular");
    assert_eq!(v["outputs"]["ramified"], false);
}

#[test]
fn coefficients_with_prime_two() {
    let out = gl3(&["coeff", "--S", "2", "--prec", "1e-10"]);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let v = json(&out);
    let o = &v["outputs"];
    assert!(close(&o["c_q_s"], 0.5, 1e-15));
    // ζ′/ζ(2) = ln 2π + γ − 12 ln A, and removing the factor at 2 adds ln 2 / 3.
    let log_derivative = (2.0 * PI).ln() + EULER_GAMMA - 12.0 * LN_GLAISHER + 2f64.ln() / 3.0;
    assert!(close(&o["zeta_log_derivative_at_2"], log_derivative, 1e-9));
    assert!(close(&o["a_g_min"], log_derivative - 2f64.ln(), 1e-9));
    assert_eq!(o["config_echo"]["volumes"]["vol_m0"], 1.0);
    assert_eq!(v["provenance"]["vol_M0"], "configured (default)");
}

#[test]
fn partial_zeta_at_two() {
    let out = gl3(&["zeta", "--s", "2", "--S", "2,3"]);
    assert_eq!(out.exit_code, 0);
    let v = json(&out);
    assert!(close(&v["outputs"]["value"]["re"], PI * PI / 9.0, 1e-10));
}

#[test]
fn local_integral_matches_oracle() {
    let out = gl3(&["locint", "--p", "7", "--oracle-depth", "10"]);
    assert_eq!(out.exit_code, 0);
    let v = json(&out);
    assert!(close(&v["outputs"]["closed_form"]["value"], -(7f64.ln()) / 48.0, 1e-15));
    assert!(v["outputs"]["difference"].as_f64().unwrap().abs() <= 1e-5);
}

#[test]
fn exit_codes() {
    assert_eq!(gl3(&["--help"]).exit_code, 0);
    assert_eq!(gl3(&["bogus"]).exit_code, 2);
    assert_eq!(gl3(&["orbit", "classify", "--matrix", "1,0"]).exit_code, 2);
    let singular = gl3(&["orbit", "classify", "--matrix", "1,0,0,0,0,0,0,0,3"]);
    assert_eq!(singular.exit_code, 1);
    assert_eq!(json(&singular)["outputs"]["error"]["kind"], "domain");
    assert_eq!(gl3(&["--config", "/nonexistent/gl3.conf", "rootdata", "dump"]).exit_code, 1);
}

#[test]
fn identical_arguments_give_identical_bytes() {
    for args in [
        &["rootdata", "dump"][..],
        &["verify", "lemmas", "--which", "sigma", "--samples", "300", "--seed", "9"],
        &[
            "weight",
            "hull",
            "--T",
            "3,1,-4",
            "--H",
            "123:0,0,0;213:0.1,0,-0.1;132:0,0.2,-0.2;231:0,0,0;312:0.3,-0.1,-0.2;321:0,0,0",
            "--method",
            "limit",
        ],
        &["woi", "jm0"],
    ] {
        let (a, b) = (gl3(args), gl3(args));
        assert_eq!(a.exit_code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.contains("wall_time"));
    }
}

#[test]
fn timing_flag_adds_wall_time() {
    let v = json(&gl3(&["--timing", "rootdata", "dump"]));
    assert!(v["wall_time_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn flags_override_config_file_over_defaults() {
    let path = std::env::temp_dir().join(format!("gl3-geom-test-{}.conf", std::process::id()));
    std::fs::write(&path, "# volumes\nvol_M0 = 2\nC = 1\nc_Q = 1\n").unwrap();
    let out = gl3(&["--config", path.to_str().unwrap(), "coeff", "--volM0", "3"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["outputs"]["config_echo"]["volumes"]["vol_m0"], 3.0);
    assert_eq!(v["outputs"]["config_echo"]["c"], 1.0);
    assert!(close(&v["outputs"]["a_g_reg_slope"], 1.0, 1e-15));
    assert_eq!(v["provenance"]["vol_M0"], "configured (flag)");
    assert_eq!(v["provenance"]["C"], "configured (config file)");
    assert_eq!(v["provenance"]["vol_G"], "configured (default)");
}

#[test]
fn unattainable_tolerance_reports_estimate() {
    let out = gl3(&["woi", "jm0", "--tol", "1e-30"]);
    assert_eq!(out.exit_code, 1);
    let e = &json(&out)["outputs"]["error"];
    assert_eq!(e["kind"], "ToleranceNotMet");
    assert!(e["estimate"].as_f64().unwrap().is_finite());
    assert!(e["error_estimate"].as_f64().unwrap() < 1e-9);
}

fn verdicts(out: &RunOutput) -> Vec<(u64, bool)> {
    json(out)["outputs"]["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["id"].as_u64().unwrap(), c["passed"].as_bool().unwrap()))
        .collect()
}

#[test]
fn seed_changes_samples_not_verdicts() {
    let a = gl3(&["--seed", "1", "suite", "--only", "1,2,4,5"]);
    let b = gl3(&["--seed", "12345", "suite", "--only", "1,2,4,5"]);
    assert_eq!(a.exit_code, 0, "{}", a.stderr);
    assert_eq!(verdicts(&a), verdicts(&b));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn binary_fails_quadrature_criterion_gracefully_at_unattainable_tolerance() {
    let out = Command::new(env!("CARGO_BIN_EXE_gl3-geom"))
        .args(["suite", "--only", "9", "--tol", "1e-30"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = &v["outputs"]["criteria"][0];
    assert_eq!(c["passed"], false);
    let m = &c["measured"]["self_convergence"]["j_m0"]["default"];
    assert!(m["value"].as_f64().unwrap().is_finite());
    assert!(m["tolerance_not_met"].as_f64().is_some());
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion 9: FAIL"));
}

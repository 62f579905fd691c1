//! End-to-end tests running the compiled binary against temp JSON files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_complex::Complex64;
use serde_json::{json, Value};
use tempfile::TempDir;

use gatetime::bipartite::cnot;
use gatetime::linalg::{pauli_x, pauli_y};
use gatetime::protosim::random_protocol;
use gatetime::ComplexMatrix;

const QUARTER_PI: f64 = std::f64::consts::FRAC_PI_4;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gatetime"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout holds one json document")
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    let d = m.dim();
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let z = m.entries()[r * d + c];
                    [z.re, z.im]
                })
                .collect()
        })
        .collect()
}

fn write_matrix(dir: &Path, name: &str, m: &ComplexMatrix) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(
        &path,
        json!({"dim": m.dim(), "matrix": rows(m)}).to_string(),
    )
    .unwrap();
    path
}

fn write_text(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn xx() -> ComplexMatrix {
    pauli_x().kron(&pauli_x())
}

fn x_on_one_side() -> ComplexMatrix {
    pauli_x().kron(&ComplexMatrix::identity(2))
}

#[test]
fn canon_of_the_identity_is_all_zero() {
    let dir = TempDir::new().unwrap();
    let gate = write_matrix(dir.path(), "gate.json", &ComplexMatrix::identity(4));
    let doc = stdout_json(&run(&["canon", gate.to_str().unwrap()]));
    assert_eq!(doc["theta"], json!([0.0, 0.0, 0.0]));
    assert_eq!(doc["phi"], json!([0.0, 0.0, 0.0, 0.0]));
}

#[test]
fn canon_of_cnot_reports_a_quarter_turn() {
    let dir = TempDir::new().unwrap();
    let gate = write_matrix(dir.path(), "gate.json", &cnot());
    let out = run(&["canon", gate.to_str().unwrap()]);
    let doc = stdout_json(&out);
    assert!((doc["theta"][0].as_f64().unwrap() - QUARTER_PI).abs() < 1e-11);
    assert_eq!(doc["theta"][1], json!(0.0));
    assert_eq!(doc["theta"][2], json!(0.0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("0.785398163397"),
        "12 significant digits: {text}"
    );
}

#[test]
fn canon_rejects_a_nonunitary_matrix() {
    let dir = TempDir::new().unwrap();
    let mut bad = ComplexMatrix::identity(4);
    bad = bad.add(&ComplexMatrix::from_fn(4, |r, c| {
        Complex64::new(if r == 3 && c == 2 { 1.0 } else { 0.0 }, 0.0)
    }));
    let gate = write_matrix(dir.path(), "gate.json", &bad);
    let out = run(&["canon", gate.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty(), "diagnostics must stay off stdout");
    assert!(String::from_utf8_lossy(&out.stderr).contains("not unitary"));
}

#[test]
fn hamcanon_of_xx_is_an_entangling_unit_coupling() {
    let dir = TempDir::new().unwrap();
    let ham = write_matrix(dir.path(), "ham.json", &xx());
    let doc = stdout_json(&run(&["hamcanon", ham.to_str().unwrap()]));
    assert_eq!(doc["h"], json!([1.0, 0.0, 0.0]));
    assert_eq!(doc["entangling"], json!(true));
}

#[test]
fn hamcanon_of_a_one_sided_term_is_not_entangling() {
    let dir = TempDir::new().unwrap();
    let ham = write_matrix(dir.path(), "ham.json", &x_on_one_side());
    let doc = stdout_json(&run(&["hamcanon", ham.to_str().unwrap()]));
    assert_eq!(doc["h"], json!([0.0, 0.0, 0.0]));
    assert_eq!(doc["entangling"], json!(false));
}

#[test]
fn hamcanon_orders_weighted_couplings() {
    let dir = TempDir::new().unwrap();
    let h = xx()
        .scale(Complex64::new(2.0, 0.0))
        .add(&pauli_y().kron(&pauli_y()));
    let ham = write_matrix(dir.path(), "ham.json", &h);
    let doc = stdout_json(&run(&["hamcanon", ham.to_str().unwrap()]));
    assert_eq!(doc["h"], json!([2.0, 1.0, 0.0]));
    assert_eq!(doc["entangling"], json!(true));
}

#[test]
fn mintime_of_cnot_under_xx_is_a_quarter_period() {
    let dir = TempDir::new().unwrap();
    let gate = write_matrix(dir.path(), "gate.json", &cnot());
    let ham = write_matrix(dir.path(), "ham.json", &xx());
    let doc = stdout_json(&run(&[
        "mintime",
        gate.to_str().unwrap(),
        ham.to_str().unwrap(),
    ]));
    assert!((doc["t_min"].as_f64().unwrap() - QUARTER_PI).abs() < 1e-11);
    assert_eq!(doc["m"], json!([0, 0, 0, 0]));
    assert_eq!(doc["active_k"], json!(1));
}

#[test]
fn mintime_of_a_local_gate_is_zero() {
    let dir = TempDir::new().unwrap();
    let gate = write_matrix(dir.path(), "gate.json", &ComplexMatrix::identity(4));
    let ham = write_matrix(dir.path(), "ham.json", &xx());
    let doc = stdout_json(&run(&[
        "mintime",
        gate.to_str().unwrap(),
        ham.to_str().unwrap(),
    ]));
    assert_eq!(doc["t_min"], json!(0.0));
}

#[test]
fn mintime_requires_an_entangling_coupling() {
    let dir = TempDir::new().unwrap();
    let gate = write_matrix(dir.path(), "gate.json", &cnot());
    let ham = write_matrix(dir.path(), "ham.json", &x_on_one_side());
    let out = run(&["mintime", gate.to_str().unwrap(), ham.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not entangling"));
}

#[test]
fn verify_accepts_an_empty_protocol() {
    let dir = TempDir::new().unwrap();
    let proto = write_text(dir.path(), "proto.json", r#"{"segments": []}"#);
    let ham = write_matrix(dir.path(), "ham.json", &xx());
    let doc = stdout_json(&run(&[
        "verify",
        proto.to_str().unwrap(),
        ham.to_str().unwrap(),
    ]));
    assert_eq!(doc["pass"], json!(true));
    assert_eq!(doc["slack"], json!(0.0));
    assert_eq!(doc["t_total"], json!(0.0));
}

#[test]
fn verify_accepts_a_bare_interaction_segment() {
    let dir = TempDir::new().unwrap();
    let proto = write_text(dir.path(), "proto.json", r#"{"segments": [{"t": 0.3}]}"#);
    let ham = write_matrix(dir.path(), "ham.json", &xx());
    let doc = stdout_json(&run(&[
        "verify",
        proto.to_str().unwrap(),
        ham.to_str().unwrap(),
    ]));
    assert_eq!(doc["pass"], json!(true));
    assert!((doc["t_total"].as_f64().unwrap() - 0.3).abs() < 1e-12);
}

#[test]
fn verify_accepts_a_seeded_random_protocol() {
    let dir = TempDir::new().unwrap();
    let p = random_protocol(6, 1.0, 905).unwrap();
    let segments: Vec<Value> = p
        .segments()
        .iter()
        .map(|s| json!({"t": s.duration, "left": rows(&s.left), "right": rows(&s.right)}))
        .collect();
    let proto = write_text(
        dir.path(),
        "proto.json",
        &json!({ "segments": segments }).to_string(),
    );
    let ham = write_matrix(dir.path(), "ham.json", &xx());
    let doc = stdout_json(&run(&[
        "verify",
        proto.to_str().unwrap(),
        ham.to_str().unwrap(),
    ]));
    assert_eq!(doc["pass"], json!(true));
    assert!(doc["slack"].as_f64().unwrap() >= 0.0);
}

#[test]
fn verify_rejects_nonunitary_locals() {
    let dir = TempDir::new().unwrap();
    let proto = write_text(
        dir.path(),
        "proto.json",
        r#"{"segments": [{"t": 0.1, "left": [[[1,0],[0,0]],[[0,0],[2,0]]]}]}"#,
    );
    let ham = write_matrix(dir.path(), "ham.json", &xx());
    let out = run(&["verify", proto.to_str().unwrap(), ham.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn nbound_on_two_qubits_matches_the_dedicated_solver() {
    let dir = TempDir::new().unwrap();
    let gate = write_matrix(dir.path(), "gate.json", &cnot());
    let ham = write_matrix(dir.path(), "ham.json", &xx());
    let lower = stdout_json(&run(&[
        "nbound",
        gate.to_str().unwrap(),
        ham.to_str().unwrap(),
    ]));
    let exact = stdout_json(&run(&[
        "mintime",
        gate.to_str().unwrap(),
        ham.to_str().unwrap(),
    ]));
    let t_lower = lower["t_lower"].as_f64().unwrap();
    let t_min = exact["t_min"].as_f64().unwrap();
    assert!((t_lower - t_min).abs() < 1e-11, "{t_lower} vs {t_min}");
    assert!((t_lower - QUARTER_PI).abs() < 1e-11);
}

#[test]
fn nbound_of_the_identity_on_four_qubits_is_zero() {
    let dir = TempDir::new().unwrap();
    let eye2 = ComplexMatrix::identity(2);
    let h = xx().kron(&eye2).kron(&eye2);
    let gate = write_matrix(dir.path(), "gate.json", &ComplexMatrix::identity(16));
    let ham = write_matrix(dir.path(), "ham.json", &h);
    let doc = stdout_json(&run(&[
        "nbound",
        gate.to_str().unwrap(),
        ham.to_str().unwrap(),
    ]));
    assert_eq!(doc["t_lower"], json!(0.0));
}

#[test]
fn nbound_rejects_an_odd_register() {
    let dir = TempDir::new().unwrap();
    let h = xx().kron(&ComplexMatrix::identity(2));
    let gate = write_matrix(dir.path(), "gate.json", &ComplexMatrix::identity(8));
    let ham = write_matrix(dir.path(), "ham.json", &h);
    let out = run(&["nbound", gate.to_str().unwrap(), ham.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even qubit count"));
}

#[test]
fn selftest_passes_and_is_deterministic() {
    let first = run(&["selftest", "--seed", "11"]);
    let second = run(&["selftest", "--seed", "11"]);
    let doc = stdout_json(&first);
    assert_eq!(doc["pass"], json!(true));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn identical_inputs_give_identical_output() {
    let dir = TempDir::new().unwrap();
    let gate = write_matrix(dir.path(), "gate.json", &cnot());
    let first = run(&["canon", gate.to_str().unwrap()]);
    let second = run(&["canon", gate.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn a_loose_tolerance_admits_a_slightly_perturbed_gate() {
    let dir = TempDir::new().unwrap();
    let near = ComplexMatrix::identity(4).scale(Complex64::new(1.000001, 0.0));
    let gate = write_matrix(dir.path(), "gate.json", &near);
    let strict = run(&["canon", gate.to_str().unwrap()]);
    assert_eq!(strict.status.code(), Some(1));
    let loose = run(&["canon", "--tol", "1e-4", gate.to_str().unwrap()]);
    assert_eq!(loose.status.code(), Some(0));
}

#[test]
fn malformed_json_is_rejected_with_a_diagnostic() {
    let dir = TempDir::new().unwrap();
    let gate = write_text(dir.path(), "gate.json", r#"{"dim": 4"#);
    let out = run(&["canon", gate.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn a_shape_mismatch_is_rejected() {
    let dir = TempDir::new().unwrap();
    let gate = write_text(
        dir.path(),
        "gate.json",
        r#"{"dim": 4, "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]}"#,
    );
    let out = run(&["canon", gate.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("shape"));
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("gatetime"));
}

//! JSON front end for the gate-time library.
//!
//! Each subcommand reads matrices or protocols from JSON files, runs one
//! library operation, and prints a single JSON document on standard output.
//! Diagnostics go to standard error only. Exit codes: 0 success, 1 invalid
//! input, 2 infeasible or non-entangling, 3 bound violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use gatetime::bipartite::{canonical_params, gate_invariants};
use gatetime::hamcanon::{ham_canonical_params, is_entangling};
use gatetime::majorize::min_time_gate_ham;
use gatetime::nbound::nqubit_bound;
use gatetime::protosim::{random_protocol, verify_protocol, Protocol, Segment};
use gatetime::sample::{
    dress_with_locals, random_entangling_hamiltonian, random_weyl_params, rng_from_seed,
};
use gatetime::{ComplexMatrix, Error, Tolerances};

#[derive(Parser)]
#[command(
    name = "gatetime",
    version,
    about = "Nonlocal invariants and minimal simulation times of two-qubit gates"
)]
struct Cli {
    /// Override the input validation tolerance (unitarity and hermiticity).
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical parameters and nonlocal content of a two-qubit gate.
    Canon {
        /// Gate as a JSON matrix file.
        gate: PathBuf,
    },
    /// Canonical coupling coefficients of a two-qubit Hamiltonian.
    Hamcanon {
        /// Hamiltonian as a JSON matrix file.
        ham: PathBuf,
    },
    /// Minimal interaction time to simulate a gate with a coupling.
    Mintime {
        gate: PathBuf,
        ham: PathBuf,
        /// Search every zero-sum shift vector with entries in {-1, 0, 1}.
        #[arg(long)]
        exhaustive_m: bool,
    },
    /// Check a protocol's total time against the minimal-time bound.
    Verify {
        /// Protocol as a JSON segments file.
        protocol: PathBuf,
        ham: PathBuf,
        #[arg(long)]
        exhaustive_m: bool,
    },
    /// Lower bound on interaction time for registers of 2 to 6 qubits.
    Nbound {
        gate: PathBuf,
        ham: PathBuf,
        /// Radius of the integer shift window to search.
        #[arg(long, default_value_t = 1)]
        window: u32,
    },
    /// Seeded random sweep exercising invariants and the bound end to end.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Matrix interchange format: `dim` and a `dim` x `dim` array of
/// `[re, im]` pairs.
#[derive(Deserialize)]
struct MatrixFile {
    dim: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Deserialize)]
struct SegmentFile {
    t: f64,
    left: Option<Vec<Vec<[f64; 2]>>>,
    right: Option<Vec<Vec<[f64; 2]>>>,
}

/// Protocol interchange format: ordered segments, locals optional and
/// defaulting to the identity.
#[derive(Deserialize)]
struct ProtocolFile {
    segments: Vec<SegmentFile>,
}

enum Failure {
    /// Unreadable, unparsable, or invalid input: exit 1.
    Input(String),
    /// Well-formed input outside the solvable domain: exit 2.
    Infeasible(String),
    /// A verified protocol beat the bound: exit 3.
    BoundViolation,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Infeasible(_) => 2,
            Failure::BoundViolation => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotEntangling { .. } | Error::Infeasible => Failure::Infeasible(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests print on stdout and exit cleanly;
            // actual usage errors count as invalid input.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut tol = Tolerances::DEFAULT;
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            eprintln!("error: --tol must be a positive finite number");
            return ExitCode::from(1);
        }
        tol.unitary = t;
        tol.hermitian = t;
    }
    match run(cli.command, &tol) {
        Ok(doc) => {
            println!("{doc}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Input(msg) | Failure::Infeasible(msg) => eprintln!("error: {msg}"),
                Failure::BoundViolation => {
                    eprintln!("error: protocol total time beats the lower bound")
                }
            }
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(command: Command, tol: &Tolerances) -> Result<Value, Failure> {
    match command {
        Command::Canon { gate } => {
            let u = read_matrix(&gate)?;
            let inv = gate_invariants(&u, tol).map_err(Failure::from)?;
            if inv.boundary_tie {
                eprintln!(
                    "warning: gate sits on a chamber boundary; reporting the first \
                     of several equivalent parameter sets"
                );
            }
            Ok(json!({
                "theta": sig12_slice(&inv.params.as_array()),
                "phi": sig12_slice(&inv.phi.as_array()),
            }))
        }
        Command::Hamcanon { ham } => {
            let h = read_matrix(&ham)?;
            let params = ham_canonical_params(&h, tol).map_err(Failure::from)?;
            let entangling = is_entangling(&h, tol).map_err(Failure::from)?;
            Ok(json!({
                "h": sig12_slice(&params.as_array()),
                "entangling": entangling,
            }))
        }
        Command::Mintime {
            gate,
            ham,
            exhaustive_m,
        } => {
            let u = read_matrix(&gate)?;
            let h = read_matrix(&ham)?;
            let r = min_time_gate_ham(&u, &h, exhaustive_m, tol).map_err(Failure::from)?;
            Ok(json!({
                "t_min": sig12(r.t_min),
                "m": r.m,
                "active_k": r.active_k,
            }))
        }
        Command::Verify {
            protocol,
            ham,
            exhaustive_m,
        } => {
            let p = read_protocol(&protocol, tol)?;
            let h = read_matrix(&ham)?;
            let report = verify_protocol(&h, &p, exhaustive_m, tol).map_err(Failure::from)?;
            let doc = json!({
                "t_total": sig12(report.t_total),
                "t_min": sig12(report.t_min),
                "slack": sig12(report.slack),
                "pass": report.pass,
            });
            if report.pass {
                Ok(doc)
            } else {
                // Still emit the report so the violation can be inspected.
                println!("{doc}");
                Err(Failure::BoundViolation)
            }
        }
        Command::Nbound { gate, ham, window } => {
            let u = read_matrix(&gate)?;
            let h = read_matrix(&ham)?;
            let r = nqubit_bound(&u, &h, window, tol).map_err(Failure::from)?;
            Ok(json!({
                "t_lower": sig12(r.t_lower),
                "m": r.m,
                "searched_window": r.searched_window,
            }))
        }
        Command::Selftest { seed } => selftest(seed, tol),
    }
}

/// Seeded end-to-end sweep: dressed gates must give back their parameters,
/// and random protocols must respect the minimal-time bound.
fn selftest(seed: u64, tol: &Tolerances) -> Result<Value, Failure> {
    const GATE_TRIALS: u32 = 50;
    const PROTOCOL_TRIALS: u32 = 50;

    let mut rng = rng_from_seed(seed);
    let mut worst_recovery = 0.0f64;
    for _ in 0..GATE_TRIALS {
        let p = random_weyl_params(&mut rng, 1e-3);
        let gate = gatetime::bipartite::canonical_gate(&p, tol).map_err(Failure::from)?;
        let dressed = dress_with_locals(&mut rng, &gate);
        let got = canonical_params(&dressed, tol).map_err(Failure::from)?;
        for (a, b) in got.as_array().iter().zip(p.as_array()) {
            worst_recovery = worst_recovery.max((a - b).abs());
        }
    }

    let mut worst_slack = f64::INFINITY;
    let mut violations = 0u32;
    for trial in 0..PROTOCOL_TRIALS {
        let k = rng.random_range(1..=6);
        let p =
            random_protocol(k, 1.0, seed.wrapping_add(u64::from(trial))).map_err(Failure::from)?;
        let h = random_entangling_hamiltonian(&mut rng);
        let report = verify_protocol(&h, &p, false, tol).map_err(Failure::from)?;
        worst_slack = worst_slack.min(report.slack);
        if !report.pass {
            violations += 1;
        }
    }

    let pass = worst_recovery <= 1e-8 && violations == 0;
    let doc = json!({
        "seed": seed,
        "gate_trials": GATE_TRIALS,
        "protocol_trials": PROTOCOL_TRIALS,
        "worst_recovery": sig12(worst_recovery),
        "worst_slack": sig12(worst_slack),
        "pass": pass,
    });
    if pass {
        Ok(doc)
    } else {
        println!("{doc}");
        Err(Failure::BoundViolation)
    }
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file: MatrixFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    matrix_from_rows(file.dim, &file.matrix)
        .map_err(|reason| Failure::Input(format!("{}: {reason}", path.display())))
}

fn matrix_from_rows(dim: usize, rows: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix, String> {
    if dim == 0 {
        return Err("dim must be positive".into());
    }
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(format!("matrix shape does not match dim {dim}"));
    }
    if rows
        .iter()
        .flatten()
        .any(|e| !(e[0].is_finite() && e[1].is_finite()))
    {
        return Err("matrix entries must be finite".into());
    }
    Ok(ComplexMatrix::from_fn(dim, |r, c| {
        Complex64::new(rows[r][c][0], rows[r][c][1])
    }))
}

fn read_protocol(path: &Path, tol: &Tolerances) -> Result<Protocol, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file: ProtocolFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut segments = Vec::with_capacity(file.segments.len());
    for (j, s) in file.segments.iter().enumerate() {
        let local = |side: &Option<Vec<Vec<[f64; 2]>>>| -> Result<ComplexMatrix, Failure> {
            match side {
                None => Ok(ComplexMatrix::identity(2)),
                Some(rows) => matrix_from_rows(2, rows).map_err(|reason| {
                    Failure::Input(format!("{}: segment {j}: {reason}", path.display()))
                }),
            }
        };
        segments.push(Segment::new(s.t, local(&s.left)?, local(&s.right)?));
    }
    Protocol::new(segments, tol).map_err(Failure::from)
}

/// Round to 12 significant digits so output is stable across platforms.
/// Every reported quantity is a unit-scale angle or time, so magnitudes
/// below 1e-12 are arithmetic noise and print as zero.
fn sig12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < 1e-12 {
        return 0.0;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn sig12_slice(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(sig12).collect()
}

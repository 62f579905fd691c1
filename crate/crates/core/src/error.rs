//! Error type shared across the library.

/// Errors reported by validation and numerical routines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("entry count {count} does not match a {dim}x{dim} matrix")]
    ShapeMismatch { dim: usize, count: usize },

    #[error("matrix entries must be finite")]
    NonFiniteEntry,

    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("matrix is not unitary: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotUnitary { residual: f64, tolerance: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error(
        "canonical ordering violated: ({x:.6e}, {y:.6e}, {z:.6e}) is outside the ordered chamber"
    )]
    OrderingViolation { x: f64, y: f64, z: f64 },

    #[error("no phase representative yields canonically ordered parameters")]
    NoCanonicalRepresentative,

    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("vectors must be non-empty")]
    EmptyVector,

    #[error("integer shift set is invalid: {reason}")]
    InvalidShiftSet { reason: String },

    #[error(
        "Hamiltonian is not entangling: leading canonical coefficient {leading:.3e} is at or below {tolerance:.3e}"
    )]
    NotEntangling { leading: f64, tolerance: f64 },

    #[error("no finite time satisfies the constraints")]
    Infeasible,

    #[error("spin-flip conjugation needs an even qubit count, got {n}")]
    OddQubitCount { n: usize },

    #[error(
        "matrix dimension {dim} is not a power of two of an allowed qubit count (2..={max_qubits})"
    )]
    UnsupportedQubitCount { dim: usize, max_qubits: usize },

    #[error("invalid protocol: {reason}")]
    InvalidProtocol { reason: String },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

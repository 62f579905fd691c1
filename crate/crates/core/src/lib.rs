//! Canonical invariants of two-qubit gates, and the minimal time needed to
//! simulate a gate with a fixed entangling Hamiltonian plus fast local
//! unitaries.
//!
//! The library is organized bottom-up:
//!
//! * [`linalg`]: dense complex matrices, Jacobi eigensolvers, exponentials.
//! * [`bipartite`]: canonical parameters and nonlocal content of two-qubit
//!   gates.
//! * [`hamcanon`]: canonical form of two-qubit Hamiltonians.
//! * [`majorize`]: majorization tests and the minimal-time bound.
//! * [`protosim`]: protocol composition and empirical bound verification.
//! * [`nbound`]: the weaker spectral bound for even numbers of qubits.
//! * [`sample`]: seeded random inputs for tests and self-checks.
//!
//! The shared scalar type is `num_complex::Complex64`; tolerances for every
//! validation and convergence decision live in [`Tolerances`].

mod error;
mod tol;

pub mod bipartite;
pub mod hamcanon;
pub mod linalg;
pub mod majorize;
pub mod nbound;
pub mod protosim;
pub mod sample;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Spectrum};
pub use tol::Tolerances;

pub use bipartite::{CanonicalParams, GateInvariants, NonlocalContent};
pub use hamcanon::HamParams;
pub use majorize::BoundResult;
pub use nbound::NBoundResult;
pub use protosim::{Protocol, Segment, VerifyReport};

//! Numerical tolerances, collected in one overridable record.
//!
//! Every hard-coded epsilon in the library lives here with its default, so a
//! caller who needs looser input validation (or tighter convergence) adjusts
//! one struct instead of hunting for constants.

/// Tolerance configuration shared by all operations.
///
/// `Tolerances::DEFAULT` (also the `Default` impl) carries the values the
/// test suites are calibrated against. Construct a modified copy with struct
/// update syntax:
///
/// ```
/// use gatetime::Tolerances;
/// let loose = Tolerances { unitary: 1e-6, ..Tolerances::DEFAULT };
/// assert!(loose.unitary > Tolerances::DEFAULT.unitary);
/// ```
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Max-norm bound on `A - A^dagger` for a matrix accepted as Hermitian.
    pub hermitian: f64,
    /// Max-norm bound on `M^dagger M - I` for a matrix accepted as unitary.
    pub unitary: f64,
    /// Orthonormality bound on eigenvector columns.
    pub orthonormal: f64,
    /// Entangling threshold on the leading canonical coefficient of a
    /// Hamiltonian; at or below it the interaction cannot generate
    /// entanglement at a useful rate and time bounds are undefined.
    pub entangling: f64,
    /// Jacobi sweeps stop once the largest off-diagonal magnitude falls
    /// below this fraction of the input's max-norm.
    pub jacobi_rel_offdiag: f64,
    /// Hard sweep budget for the Jacobi iteration; tiny matrices converge in
    /// well under ten sweeps, so hitting this signals a numerical problem.
    pub jacobi_max_sweeps: usize,
    /// Eigenvalues of the Hermitian part closer than this are treated as one
    /// degenerate cluster when diagonalizing a unitary matrix.
    pub eigenspace_gap: f64,
    /// Width of the window around the branch cut at -pi/2 within which
    /// eigenvalue arguments are snapped to the 3pi/2 side, keeping branch
    /// bookkeeping stable for spectra that sit exactly on the cut.
    pub branch_snap: f64,
    /// How far a quantity that must be an integer may sit from the nearest
    /// integer before the computation is declared a numerical failure.
    pub integer_round: f64,
    /// Slack allowed when checking canonical ordering constraints.
    pub ordering_slack: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-10,
        unitary: 1e-8,
        orthonormal: 1e-10,
        entangling: 1e-9,
        jacobi_rel_offdiag: 1e-13,
        jacobi_max_sweeps: 100,
        eigenspace_gap: 1e-8,
        branch_snap: 1e-12,
        integer_round: 1e-6,
        ordering_slack: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

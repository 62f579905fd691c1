//! Matrix exponential of `i s H` for Hermitian `H`, by spectral decomposition.

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::eig::hermitian_eig;
use crate::linalg::matrix::ComplexMatrix;
use crate::tol::Tolerances;

/// Computes `exp(i s H)` for Hermitian `H`.
///
/// The result is unitary to the quality of the eigendecomposition. `s = 0`
/// returns the identity exactly.
pub fn exp_i_hermitian(h: &ComplexMatrix, s: f64, tol: &Tolerances) -> Result<ComplexMatrix> {
    let n = h.dim();
    if s == 0.0 {
        // Still validate the input so a bad Hamiltonian cannot slip through
        // a zero-duration path.
        hermitian_eig(h, false, tol)?;
        return Ok(ComplexMatrix::identity(n));
    }
    let spec = hermitian_eig(h, true, tol)?;
    let v = spec.vectors.expect("vectors requested");
    let phases: Vec<Complex64> = spec
        .values
        .iter()
        .map(|lambda| Complex64::from_polar(1.0, s * lambda.re))
        .collect();
    // V diag(e^{i s lambda}) V^dagger, written out directly.
    let mut out = ComplexMatrix::zeros(n);
    for j in 0..n {
        for r in 0..n {
            let left = phases[j] * v[(r, j)];
            for t in 0..n {
                let add = left * v[(t, j)].conj();
                out[(r, t)] += add;
            }
        }
    }
    Ok(out)
}

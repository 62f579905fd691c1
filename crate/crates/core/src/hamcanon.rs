//! Canonical form of two-qubit Hamiltonians.
//!
//! Any 4x4 Hermitian `H` splits into an identity component, single-qubit
//! terms, and a purely two-qubit remainder. Conjugating by single-qubit
//! unitaries can bring that remainder to the diagonal normal form
//!
//! ```text
//! h_x XX + h_y YY + h_z ZZ,    h_x >= h_y >= |h_z|,
//! ```
//!
//! and the triple `(h_x, h_y, h_z)` is the complete local invariant of the
//! two-qubit part. This module extracts the triple from the spectrum of the
//! remainder rather than by constructing the conjugation: the eigenvalues of
//! the normal form are the four combinations `+-h_x +- h_y +- h_z` with an
//! even number of minus signs (negated as a whole for the fourth), so sorting
//! the spectrum in descending order `m_1 >= m_2 >= m_3 >= m_4` inverts to
//!
//! ```text
//! h_x = (m_1 + m_2) / 2,  h_y = (m_1 + m_3) / 2,  h_z = (m_2 + m_3) / 2.
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, pauli, ComplexMatrix};
use crate::tol::Tolerances;

use crate::bipartite::spin_flip;

/// Canonical interaction coefficients of a two-qubit Hamiltonian.
///
/// Maintains `x >= y >= |z|`. Unlike gate parameters the coefficients are
/// unbounded: scaling the Hamiltonian scales the triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamParams {
    x: f64,
    y: f64,
    z: f64,
}

impl HamParams {
    /// Builds the triple, checking the normal-form ordering `x >= y >= |z|`.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        let slack = Tolerances::DEFAULT.ordering_slack;
        if x + slack < y || y + slack < z.abs() {
            return Err(Error::OrderingViolation { x, y, z });
        }
        Ok(Self { x, y, z })
    }

    /// Coefficient of XX.
    pub fn x(&self) -> f64 {
        self.x
    }

    /// Coefficient of YY.
    pub fn y(&self) -> f64 {
        self.y
    }

    /// Coefficient of ZZ.
    pub fn z(&self) -> f64 {
        self.z
    }

    /// The triple as `[x, y, z]`.
    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

fn check_hermitian_4x4(h: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    if h.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: h.dim(),
        });
    }
    let residual = h.hermiticity_residual();
    if residual > tol.hermitian {
        return Err(Error::NotHermitian {
            residual,
            tolerance: tol.hermitian,
        });
    }
    Ok(())
}

/// Expands a two-qubit Hermitian operator in the Pauli product basis.
///
/// Returns coefficients `c[j][k]` with `H = sum c[j][k] (P_j x P_k)`, where
/// `P_0..P_3` are I, X, Y, Z. Coefficients of a Hermitian operator are real;
/// an imaginary residue beyond the Hermiticity tolerance is rejected.
pub fn pauli_expand(h: &ComplexMatrix, tol: &Tolerances) -> Result<[[f64; 4]; 4]> {
    check_hermitian_4x4(h, tol)?;
    let mut coeff = [[0.0f64; 4]; 4];
    for (j, row) in coeff.iter_mut().enumerate() {
        for (k, c) in row.iter_mut().enumerate() {
            let basis = pauli(j).kron(&pauli(k));
            let t = (&basis * h).trace() / Complex64::new(4.0, 0.0);
            if t.im.abs() > tol.hermitian {
                return Err(Error::NotHermitian {
                    residual: t.im.abs(),
                    tolerance: tol.hermitian,
                });
            }
            *c = t.re;
        }
    }
    Ok(coeff)
}

/// Removes the identity and single-qubit components of a two-qubit
/// Hamiltonian, leaving the purely two-qubit part.
///
/// Averaging with the spin flip negates every single-qubit Pauli term and
/// fixes the rest, so `(H + flip(H)) / 2` drops exactly the one-local terms;
/// subtracting `tr(H)/4 I` then drops the identity component.
pub fn strip_local(h: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    check_hermitian_4x4(h, tol)?;
    let flipped = spin_flip(h)?;
    let avg = (h + &flipped).scale(Complex64::new(0.5, 0.0));
    let shift = avg.trace().re / 4.0;
    let id = ComplexMatrix::identity(4).scale(Complex64::new(shift, 0.0));
    Ok(&avg - &id)
}

/// Eigenvalues of the purely two-qubit part, in descending order.
///
/// The four values sum to zero and determine the canonical coefficients.
pub fn nonlocal_eigenvalues(h: &ComplexMatrix, tol: &Tolerances) -> Result<[f64; 4]> {
    let stripped = strip_local(h, tol)?;
    let spec = hermitian_eig(&stripped, false, tol)?;
    let vals = spec.real_values();
    Ok([vals[0], vals[1], vals[2], vals[3]])
}

/// Canonical interaction coefficients `(h_x, h_y, h_z)` of a two-qubit
/// Hamiltonian. Identity and single-qubit terms do not affect the result.
pub fn ham_canonical_params(h: &ComplexMatrix, tol: &Tolerances) -> Result<HamParams> {
    let mu = nonlocal_eigenvalues(h, tol)?;
    HamParams::new(
        0.5 * (mu[0] + mu[1]),
        0.5 * (mu[0] + mu[2]),
        0.5 * (mu[1] + mu[2]),
    )
}

/// Whether the Hamiltonian can generate entanglement between the qubits,
/// i.e. whether its two-qubit part is nonzero beyond tolerance.
pub fn is_entangling(h: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(ham_canonical_params(h, tol)?.x() > tol.entangling)
}

/// Builds the normal-form Hamiltonian `h_x XX + h_y YY + h_z ZZ`.
pub fn canonical_hamiltonian(p: &HamParams) -> ComplexMatrix {
    let xx = pauli(1).kron(&pauli(1)).scale(Complex64::new(p.x(), 0.0));
    let yy = pauli(2).kron(&pauli(2)).scale(Complex64::new(p.y(), 0.0));
    let zz = pauli(3).kron(&pauli(3)).scale(Complex64::new(p.z(), 0.0));
    &(&xx + &yy) + &zz
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::exp_i_hermitian;

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn assert_close(a: f64, b: f64, eps: f64) {
        assert!((a - b).abs() <= eps, "{a} vs {b}");
    }

    #[test]
    fn mixed_local_and_nonlocal_terms() {
        // 2 XX + YY + 5 XI: the XI term must not affect anything.
        let h = &(&pauli(1).kron(&pauli(1)).scale(Complex64::new(2.0, 0.0))
            + &pauli(2).kron(&pauli(2)))
            + &pauli(1).kron(&pauli(0)).scale(Complex64::new(5.0, 0.0));
        let mu = nonlocal_eigenvalues(&h, &TOL).unwrap();
        let expected = [3.0, 1.0, -1.0, -3.0];
        for (got, want) in mu.iter().zip(expected) {
            assert_close(*got, want, 1e-12);
        }
        let p = ham_canonical_params(&h, &TOL).unwrap();
        assert_close(p.x(), 2.0, 1e-12);
        assert_close(p.y(), 1.0, 1e-12);
        assert_close(p.z(), 0.0, 1e-12);
        assert!(is_entangling(&h, &TOL).unwrap());
    }

    #[test]
    fn ising_coupling() {
        let h = pauli(3).kron(&pauli(3));
        let p = ham_canonical_params(&h, &TOL).unwrap();
        assert_close(p.x(), 1.0, 1e-12);
        assert_close(p.y(), 0.0, 1e-12);
        assert_close(p.z(), 0.0, 1e-12);
    }

    #[test]
    fn heisenberg_coupling() {
        let h = canonical_hamiltonian(&HamParams::new(1.0, 1.0, 1.0).unwrap());
        let p = ham_canonical_params(&h, &TOL).unwrap();
        assert_close(p.x(), 1.0, 1e-12);
        assert_close(p.y(), 1.0, 1e-12);
        assert_close(p.z(), 1.0, 1e-12);
    }

    #[test]
    fn negative_zz_is_already_canonical() {
        let h = canonical_hamiltonian(&HamParams::new(1.0, 1.0, -1.0).unwrap());
        let p = ham_canonical_params(&h, &TOL).unwrap();
        assert_close(p.z(), -1.0, 1e-12);
    }

    #[test]
    fn purely_local_hamiltonian_strips_to_zero() {
        // 3 ZI + IX + 2 II
        let h = &(&pauli(3).kron(&pauli(0)).scale(Complex64::new(3.0, 0.0))
            + &pauli(0).kron(&pauli(1)))
            + &ComplexMatrix::identity(4).scale(Complex64::new(2.0, 0.0));
        let stripped = strip_local(&h, &TOL).unwrap();
        assert!(stripped.max_abs() <= 1e-12);
        assert!(!is_entangling(&h, &TOL).unwrap());
    }

    #[test]
    fn local_conjugation_preserves_params() {
        let h = &canonical_hamiltonian(&HamParams::new(1.3, 0.7, -0.2).unwrap())
            + &pauli(2).kron(&pauli(0)).scale(Complex64::new(0.4, 0.0));
        let a = exp_i_hermitian(&pauli_like(1, 0.61), 1.0, &TOL).unwrap();
        let b = exp_i_hermitian(&pauli_like(3, -1.17), 1.0, &TOL).unwrap();
        let local = a.kron(&b);
        let dressed = &(&local * &h) * &local.adjoint();
        let p0 = ham_canonical_params(&h, &TOL).unwrap();
        let p1 = ham_canonical_params(&dressed, &TOL).unwrap();
        for (u, v) in p0.as_array().iter().zip(p1.as_array()) {
            assert_close(*u, v, 1e-10);
        }
    }

    fn pauli_like(j: usize, angle: f64) -> ComplexMatrix {
        pauli(j).scale(Complex64::new(angle, 0.0))
    }

    #[test]
    fn expansion_reconstructs_operator() {
        let h = &canonical_hamiltonian(&HamParams::new(0.9, 0.4, 0.1).unwrap())
            + &pauli(1).kron(&pauli(3)).scale(Complex64::new(-0.3, 0.0));
        let coeff = pauli_expand(&h, &TOL).unwrap();
        let mut rebuilt = ComplexMatrix::zeros(4);
        for (j, row) in coeff.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                let term = pauli(j).kron(&pauli(k)).scale(Complex64::new(*c, 0.0));
                rebuilt = &rebuilt + &term;
            }
        }
        assert!(h.approx_eq(&rebuilt, 1e-12));
        assert_close(coeff[1][1], 0.9, 1e-12);
        assert_close(coeff[1][3], -0.3, 1e-12);
        assert_close(coeff[0][0], 0.0, 1e-12);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut m = ComplexMatrix::identity(4);
        m[(0, 1)] = Complex64::new(0.5, 0.0);
        assert!(matches!(
            ham_canonical_params(&m, &TOL),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn rejects_wrong_dimension() {
        let m = ComplexMatrix::identity(2);
        assert!(matches!(
            strip_local(&m, &TOL),
            Err(Error::WrongDimension { expected: 4, .. })
        ));
    }

    #[test]
    fn params_reject_bad_ordering() {
        assert!(HamParams::new(1.0, 2.0, 0.0).is_err());
        assert!(HamParams::new(2.0, 1.0, 1.5).is_err());
        assert!(HamParams::new(2.0, 1.0, -1.0).is_ok());
    }
}

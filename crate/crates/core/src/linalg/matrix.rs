//! Dense complex matrices sized for few-qubit operators.
//!
//! Storage is row-major over `Complex64`. Dimensions stay small (2 through
//! 64), so the routines favour clarity over blocking: everything is
//! O(dim^3) or cheaper and allocates freely.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix with row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                dim,
                count: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { dim, data })
    }

    // Internal constructor for entries already known to be finite.
    pub(crate) fn raw(dim: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::raw(dim, vec![Complex64::ZERO; dim * dim])
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self::raw(dim, data)
    }

    /// Convenience constructor for real-valued test and fixture matrices.
    pub fn from_real<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| rows[i][j])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix::raw(self.dim, data)
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix::raw(self.dim, data)
    }

    pub fn scale(&self, z: Complex64) -> ComplexMatrix {
        ComplexMatrix::raw(self.dim, self.data.iter().map(|a| a * z).collect())
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix::raw(self.dim, self.data.iter().map(|a| a.conj()).collect())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Tensor (Kronecker) product; the result has dimension `self.dim * rhs.dim`.
    pub fn kron(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let (n, m) = (self.dim, rhs.dim);
        ComplexMatrix::from_fn(n * m, |i, j| self[(i / m, j / m)] * rhs[(i % m, j % m)])
    }

    /// Max-norm: largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm of `A - A^dagger`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let r = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(r);
            }
        }
        worst
    }

    /// Max-norm of `A^dagger A - I`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::ZERO;
                for k in 0..n {
                    s += self[(k, i)].conj() * self[(k, j)];
                }
                if i == j {
                    s -= Complex64::ONE;
                }
                worst = worst.max(s.norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.dim;
        let mut lu = self.data.clone();
        let at = |r: usize, c: usize| r * n + c;
        let mut det = Complex64::ONE;
        for col in 0..n {
            let (mut pivot_row, mut pivot_mag) = (col, lu[at(col, col)].norm());
            for r in col + 1..n {
                let mag = lu[at(r, col)].norm();
                if mag > pivot_mag {
                    pivot_row = r;
                    pivot_mag = mag;
                }
            }
            if pivot_mag == 0.0 {
                return Complex64::ZERO;
            }
            if pivot_row != col {
                for c in 0..n {
                    lu.swap(at(col, c), at(pivot_row, c));
                }
                det = -det;
            }
            let pivot = lu[at(col, col)];
            det *= pivot;
            for r in col + 1..n {
                let factor = lu[at(r, col)] / pivot;
                if factor == Complex64::ZERO {
                    continue;
                }
                for c in col..n {
                    let sub = factor * lu[at(col, c)];
                    lu[at(r, c)] -= sub;
                }
            }
        }
        det
    }

    /// True when every entry of `self - other` is within `tol` in magnitude.
    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.dim == other.dim && self.sub(other).max_abs() <= tol
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::mul(self, rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::add(self, rhs)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::sub(self, rhs)
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(
                    f,
                    "{}{:+.6}{:+.6}i",
                    if j == 0 { "" } else { "  " },
                    z.re,
                    z.im
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Single-qubit Pauli X.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real([[0.0, 1.0], [1.0, 0.0]])
}

/// Single-qubit Pauli Y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows([
        [Complex64::ZERO, -Complex64::I],
        [Complex64::I, Complex64::ZERO],
    ])
}

/// Single-qubit Pauli Z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real([[1.0, 0.0], [0.0, -1.0]])
}

///// Pauli by index: 0 is the identity, then X, Y, Z.
pub fn pauli(j: usize) -> ComplexMatrix {
    match j {
        0 => ComplexMatrix::identity(2),
        1 => pauli_x(),
        2 => pauli_y(),
        3 => pauli_z(),
        _ => panic!("pauli index out of range: {j}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn new_rejects_bad_shape_and_nonfinite() {
        assert!(matches!(
            ComplexMatrix::new(2, vec![Complex64::ZERO; 3]),
            Err(Error::ShapeMismatch { .. })
        ));
        let mut data = vec![Complex64::ZERO; 4];
        data[2] = c(f64::NAN, 0.0);
        assert!(matches!(
            ComplexMatrix::new(2, data),
            Err(Error::NonFiniteEntry)
        ));
    }

    #[test]
    fn product_against_hand_computed_values() {
        let a = ComplexMatrix::from_rows([[c(1.0, 1.0), c(0.0, 2.0)], [c(3.0, 0.0), c(0.0, -1.0)]]);
        let b = ComplexMatrix::from_rows([[c(2.0, 0.0), c(0.0, 1.0)], [c(1.0, 0.0), c(1.0, 0.0)]]);
        let ab = &a * &b;
        assert_eq!(ab[(0, 0)], c(2.0, 4.0));
        assert_eq!(ab[(0, 1)], c(-1.0, 3.0));
        assert_eq!(ab[(1, 0)], c(6.0, -1.0));
        assert_eq!(ab[(1, 1)], c(0.0, 2.0));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let a = ComplexMatrix::from_rows([[c(1.0, 2.0), c(3.0, 4.0)], [c(5.0, 6.0), c(7.0, 8.0)]]);
        let ad = a.adjoint();
        assert_eq!(ad[(0, 1)], c(5.0, -6.0));
        assert_eq!(ad[(1, 0)], c(3.0, -4.0));
    }

    #[test]
    fn kron_matches_block_structure() {
        let x = pauli_x();
        let z = pauli_z();
        let xz = x.kron(&z);
        assert_eq!(xz.dim(), 4);
        assert_eq!(xz[(0, 2)], c(1.0, 0.0));
        assert_eq!(xz[(1, 3)], c(-1.0, 0.0));
        assert_eq!(xz[(2, 0)], c(1.0, 0.0));
        assert_eq!(xz[(3, 1)], c(-1.0, 0.0));
        assert_eq!(xz[(0, 0)], Complex64::ZERO);
    }

    #[test]
    fn paulis_are_hermitian_unitary_and_traceless() {
        for j in 1..4 {
            let p = pauli(j);
            assert!(p.is_hermitian(0.0));
            assert!(p.is_unitary(1e-15));
            assert_eq!(p.trace(), Complex64::ZERO);
        }
    }

    #[test]
    fn determinant_of_known_matrices() {
        let i4 = ComplexMatrix::identity(4);
        assert!((i4.determinant() - Complex64::ONE).norm() < 1e-14);

        // Row swap of the identity has determinant -1.
        let cnot = ComplexMatrix::from_real([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]);
        assert!((cnot.determinant() + Complex64::ONE).norm() < 1e-14);

        let y = pauli_y();
        assert!((y.determinant() + Complex64::ONE).norm() < 1e-14);

        let upper =
            ComplexMatrix::from_rows([[c(2.0, 0.0), c(9.0, 1.0)], [Complex64::ZERO, c(0.0, 3.0)]]);
        assert!((upper.determinant() - c(0.0, 6.0)).norm() < 1e-14);
    }

    #[test]
    fn unitarity_residual_flags_non_unitary() {
        let u = pauli_x().scale(c(2.0, 0.0));
        assert!(u.unitarity_residual() > 1.0);
        assert!(pauli_x().unitarity_residual() < 1e-15);
    }
}

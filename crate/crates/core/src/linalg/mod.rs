//! Small dense complex linear algebra: matrices, eigensolvers, exponentials.

mod eig;
mod expm;
mod matrix;

pub use eig::{branch_arg, hermitian_eig, principal_root, unitary_eig, Spectrum};
pub use expm::exp_i_hermitian;
pub use matrix::{pauli, pauli_x, pauli_y, pauli_z, ComplexMatrix};

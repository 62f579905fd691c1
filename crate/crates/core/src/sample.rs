//! Seeded random fixtures: Hermitian operators, Haar unitaries, gates with
//! prescribed canonical parameters, and entangling Hamiltonians.
//!
//! Everything here is deterministic given the caller's generator state, and
//! [`rng_from_seed`] fixes the generator algorithm (ChaCha with 12 rounds)
//! so that suites reproduce bit-identically.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::bipartite::{canonical_gate, CanonicalParams};
use crate::hamcanon::{canonical_hamiltonian, HamParams};
use crate::linalg::{exp_i_hermitian, pauli, principal_root, ComplexMatrix};
use crate::tol::Tolerances;

/// The fixed generator used by every seeded suite in this crate.
pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Hermitian matrix with Gaussian entries: `(G + G*) / 2` for a complex
/// Ginibre sample `G`.
pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            g[(r, c)] = Complex64::new(gaussian(rng), gaussian(rng));
        }
    }
    (&g + &g.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// Single-qubit special unitary: `exp(i G)` for a random Hermitian `G`,
/// divided by the principal square root of its determinant.
pub fn random_su2(rng: &mut impl Rng) -> ComplexMatrix {
    let g = random_hermitian(rng, 2);
    let u = exp_i_hermitian(&g, 1.0, &Tolerances::DEFAULT).expect("Hermitian by construction");
    let root = principal_root(u.determinant(), 2);
    u.scale(Complex64::new(1.0, 0.0) / root)
}

/// Haar-distributed unitary: Gram-Schmidt orthonormalization of a complex
/// Ginibre matrix (the positive-diagonal QR convention is Haar-correct).
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    'resample: loop {
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
        for _ in 0..dim {
            let mut v: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
                .collect();
            // Two orthogonalization passes keep the result orthonormal to
            // round-off even for nearly dependent samples.
            for _ in 0..2 {
                for u in &cols {
                    let overlap: Complex64 =
                        u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                    for (w, x) in v.iter_mut().zip(u.iter()) {
                        *w -= overlap * x;
                    }
                }
            }
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                continue 'resample;
            }
            for w in v.iter_mut() {
                *w /= norm;
            }
            cols.push(v);
        }
        return ComplexMatrix::from_fn(dim, |r, c| cols[c][r]);
    }
}

/// Canonical gate parameters sampled away from every face of the parameter
/// region: `margin <= x <= pi/4 - margin`, `x - y >= margin`, and
/// `y - |z| >= margin`, so recovery is well conditioned.
pub fn random_weyl_params(rng: &mut impl Rng, margin: f64) -> CanonicalParams {
    loop {
        let x = rng.random_range(0.0..FRAC_PI_4);
        let y = rng.random_range(0.0..FRAC_PI_4);
        let z = rng.random_range(-FRAC_PI_4..FRAC_PI_4);
        if x >= margin && x <= FRAC_PI_4 - margin && x - y >= margin && y - z.abs() >= margin {
            return CanonicalParams::new(x, y, z).expect("sampled inside the region");
        }
    }
}

/// Wraps a gate in independent single-qubit unitaries on both sides.
pub fn dress_with_locals(rng: &mut impl Rng, u: &ComplexMatrix) -> ComplexMatrix {
    let before = random_su2(rng).kron(&random_su2(rng));
    let after = random_su2(rng).kron(&random_su2(rng));
    &(&after * u) * &before
}

/// Two-qubit gate with parameters from [`random_weyl_params`], dressed with
/// random locals and a random global phase.
pub fn random_gate(rng: &mut impl Rng, margin: f64) -> ComplexMatrix {
    let p = random_weyl_params(rng, margin);
    let core = canonical_gate(&p, &Tolerances::DEFAULT).expect("parameters are canonical");
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
    dress_with_locals(rng, &core).scale(phase)
}

/// Entangling two-qubit Hamiltonian: a canonical interaction with separated
/// coefficients, plus random single-qubit fields and an identity offset,
/// conjugated by random locals.
pub fn random_entangling_hamiltonian(rng: &mut impl Rng) -> ComplexMatrix {
    let hx = rng.random_range(0.3..1.2);
    let hy = rng.random_range(0.05..hx - 0.05);
    let hz = rng.random_range(-(hy - 0.02)..(hy - 0.02));
    let p = HamParams::new(hx, hy, hz).expect("sampled in order");
    let mut h = canonical_hamiltonian(&p);
    for j in 1..4 {
        let a = 0.3 * gaussian(rng);
        let b = 0.3 * gaussian(rng);
        h = &h + &pauli(j).kron(&pauli(0)).scale(Complex64::new(a, 0.0));
        h = &h + &pauli(0).kron(&pauli(j)).scale(Complex64::new(b, 0.0));
    }
    h = &h + &ComplexMatrix::identity(4).scale(Complex64::new(gaussian(rng), 0.0));
    let local = random_su2(rng).kron(&random_su2(rng));
    &(&local * &h) * &local.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::canonical_params;
    use crate::hamcanon::is_entangling;

    const TOL: Tolerances = Tolerances::DEFAULT;

    #[test]
    fn seeded_generator_is_deterministic() {
        let a = random_hermitian(&mut rng_from_seed(42), 4);
        let b = random_hermitian(&mut rng_from_seed(42), 4);
        assert!(a.approx_eq(&b, 0.0));
        let c = random_hermitian(&mut rng_from_seed(43), 4);
        assert!(!a.approx_eq(&c, 1e-3));
    }

    #[test]
    fn hermitian_samples_are_hermitian() {
        let mut rng = rng_from_seed(1);
        for dim in [2, 4, 8] {
            let h = random_hermitian(&mut rng, dim);
            assert!(h.hermiticity_residual() <= 1e-14);
        }
    }

    #[test]
    fn su2_samples_have_unit_determinant() {
        let mut rng = rng_from_seed(2);
        for _ in 0..20 {
            let u = random_su2(&mut rng);
            assert!(u.unitarity_residual() <= 1e-12);
            assert!((u.determinant() - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
        }
    }

    #[test]
    fn unitary_samples_are_unitary() {
        let mut rng = rng_from_seed(3);
        for dim in [2, 4, 8] {
            let u = random_unitary(&mut rng, dim);
            assert!(u.unitarity_residual() <= 1e-12, "dim {dim}");
        }
    }

    #[test]
    fn weyl_samples_respect_margins() {
        let mut rng = rng_from_seed(4);
        let margin = 1e-2;
        for _ in 0..50 {
            let p = random_weyl_params(&mut rng, margin);
            assert!(p.x() >= margin && p.x() <= FRAC_PI_4 - margin);
            assert!(p.x() - p.y() >= margin);
            assert!(p.y() - p.z().abs() >= margin);
        }
    }

    #[test]
    fn dressed_gate_recovers_its_parameters() {
        let mut rng = rng_from_seed(5);
        let p = random_weyl_params(&mut rng, 1e-2);
        let u = dress_with_locals(&mut rng, &canonical_gate(&p, &TOL).unwrap());
        let q = canonical_params(&u, &TOL).unwrap();
        for (a, b) in p.as_array().iter().zip(q.as_array()) {
            assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn sampled_hamiltonians_are_entangling() {
        let mut rng = rng_from_seed(6);
        for _ in 0..20 {
            let h = random_entangling_hamiltonian(&mut rng);
            assert!(h.hermiticity_residual() <= 1e-12);
            assert!(is_entangling(&h, &TOL).unwrap());
        }
    }
}

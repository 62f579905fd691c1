//! Eigensolvers for small Hermitian and unitary matrices.
//!
//! The Hermitian solver is a cyclic Jacobi iteration with complex plane
//! rotations. At the dimensions used here (2 through 64) it is simple,
//! accurate to near machine precision, and has no external dependencies.
//!
//! Unitary matrices are normal, so a unitary M is diagonalized through its
//! commuting Hermitian parts A = (M + M^dagger)/2 and B = (M - M^dagger)/(2i):
//! diagonalize A, then diagonalize B restricted to each (near-)degenerate
//! eigenspace of A. Eigenvalues are recovered as Rayleigh quotients of M.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::tol::Tolerances;

/// Eigenvalues, and optionally a matrix whose columns are the matching
/// orthonormal eigenvectors.
///
/// Hermitian spectra are sorted by descending real part; unitary spectra by
/// descending argument over the branch (-pi/2, 3pi/2].
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
    pub vectors: Option<ComplexMatrix>,
}

impl Spectrum {
    /// Real parts of the eigenvalues, for Hermitian spectra.
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }
}

/// Argument of `z` mapped into the branch (-pi/2, 3pi/2].
///
/// Values within `snap` of the cut at -pi/2 are lifted to the 3pi/2 end, so
/// eigenvalues sitting exactly on the cut land on one deterministic side.
pub fn branch_arg(z: Complex64, snap: f64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -std::f64::consts::FRAC_PI_2 + snap {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// Principal k-th root: magnitude root times `exp(i arg(z) / k)` with the
/// argument taken in (-pi, pi].
pub fn principal_root(z: Complex64, k: u32) -> Complex64 {
    let k = f64::from(k);
    Complex64::from_polar(z.norm().powf(1.0 / k), z.arg() / k)
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations.
///
/// Eigenvalues come back sorted in descending order. With `want_vectors` the
/// spectrum carries the accumulated rotation matrix, whose columns satisfy
/// `A v = lambda v` to roughly `1e-13 * max_abs(A)`.
pub fn hermitian_eig(a: &ComplexMatrix, want_vectors: bool, tol: &Tolerances) -> Result<Spectrum> {
    let residual = a.hermiticity_residual();
    if residual > tol.hermitian {
        return Err(Error::NotHermitian {
            residual,
            tolerance: tol.hermitian,
        });
    }
    let n = a.dim();
    let norm = a.max_abs();
    let mut work = a.clone();
    let mut vectors = want_vectors.then(|| ComplexMatrix::identity(n));

    if norm > 0.0 {
        let threshold = tol.jacobi_rel_offdiag * norm;
        let mut converged = false;
        for _ in 0..tol.jacobi_max_sweeps {
            if off_diagonal_max(&work) <= threshold {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut work, vectors.as_mut(), p, q);
                }
            }
        }
        if !converged && off_diagonal_max(&work) > threshold {
            return Err(Error::NoConvergence {
                sweeps: tol.jacobi_max_sweeps,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| work[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());

    let values = order
        .iter()
        .map(|&i| Complex64::new(diag[i], 0.0))
        .collect();
    let vectors = vectors.map(|v| permute_columns(&v, &order));
    Ok(Spectrum { values, vectors })
}

fn off_diagonal_max(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut worst = 0.0f64;
    for p in 0..n {
        for q in p + 1..n {
            worst = worst.max(m[(p, q)].norm());
        }
    }
    worst
}

// One Jacobi rotation zeroing the (p, q) entry of the Hermitian matrix `m`.
//
// The complex entry is stripped to a phase first, reducing the pivot block to
// the real symmetric case, then the standard stable rotation applies
// (tau = (a_qq - a_pp) / 2|a_pq|, t the smaller root of t^2 + 2 tau t - 1).
fn rotate(m: &mut ComplexMatrix, vectors: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let b = m[(p, q)];
    let absb = b.norm();
    if absb == 0.0 {
        return;
    }
    let phase = b / absb;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * absb);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Column rotation entries: G[p][p] = c, G[p][q] = s,
    // G[q][p] = -s conj(phase), G[q][q] = c conj(phase).
    let gqp = -s * phase.conj();
    let gqq = c * phase.conj();
    let n = m.dim();
    for r in 0..n {
        let mp = m[(r, p)];
        let mq = m[(r, q)];
        m[(r, p)] = mp * c + mq * gqp;
        m[(r, q)] = mp * s + mq * gqq;
    }
    for r in 0..n {
        let mp = m[(p, r)];
        let mq = m[(q, r)];
        m[(p, r)] = mp * c + mq * gqp.conj();
        m[(q, r)] = mp * s + mq * gqq.conj();
    }
    // The rotated diagonal is real by construction; drop rounding residue so
    // it cannot accumulate over sweeps.
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
    m[(p, q)] = Complex64::ZERO;
    m[(q, p)] = Complex64::ZERO;

    if let Some(v) = vectors {
        for r in 0..n {
            let vp = v[(r, p)];
            let vq = v[(r, q)];
            v[(r, p)] = vp * c + vq * gqp;
            v[(r, q)] = vp * s + vq * gqq;
        }
    }
}

fn permute_columns(m: &ComplexMatrix, order: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.dim(), |i, j| m[(i, order[j])])
}

/// Diagonalizes a unitary matrix through its commuting Hermitian parts.
///
/// Eigenvalues are sorted by descending [`branch_arg`] and lie on the unit
/// circle to the input's unitarity tolerance. Eigenvectors are always
/// computed (the degenerate-subspace pass needs them anyway).
pub fn unitary_eig(m: &ComplexMatrix, tol: &Tolerances) -> Result<Spectrum> {
    let residual = m.unitarity_residual();
    if residual > tol.unitary {
        return Err(Error::NotUnitary {
            residual,
            tolerance: tol.unitary,
        });
    }
    let n = m.dim();
    let adj = m.adjoint();
    let a = m.add(&adj).scale(Complex64::new(0.5, 0.0));
    let b = m.sub(&adj).scale(Complex64::new(0.0, -0.5));

    let spec_a = hermitian_eig(&a, true, tol)?;
    let a_vals = spec_a.real_values();
    let mut vectors = spec_a.vectors.expect("vectors requested");

    // Group near-equal eigenvalues of A; within each group the residual
    // freedom is fixed by diagonalizing B restricted to the subspace.
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && a_vals[end - 1] - a_vals[end] < tol.eigenspace_gap {
            end += 1;
        }
        if end - start > 1 {
            diagonalize_restriction(&b, &mut vectors, start, end, tol)?;
        }
        start = end;
    }

    // Rayleigh quotients of M with the refined eigenvectors.
    let mut values: Vec<Complex64> = (0..n).map(|j| rayleigh(m, &vectors, j)).collect();

    let mut order: Vec<usize> = (0..n).collect();
    let keys: Vec<f64> = values
        .iter()
        .map(|&z| branch_arg(z, tol.branch_snap))
        .collect();
    order.sort_by(|&i, &j| keys[j].partial_cmp(&keys[i]).unwrap());
    values = order.iter().map(|&i| values[i]).collect();
    let vectors = permute_columns(&vectors, &order);

    Ok(Spectrum {
        values,
        vectors: Some(vectors),
    })
}

// Replaces columns [start, end) of `vectors` by the basis that diagonalizes
// the Hermitian form B restricted to their span.
fn diagonalize_restriction(
    b: &ComplexMatrix,
    vectors: &mut ComplexMatrix,
    start: usize,
    end: usize,
    tol: &Tolerances,
) -> Result<()> {
    let n = b.dim();
    let k = end - start;
    let cols: Vec<Vec<Complex64>> = (start..end).map(|j| vectors.column(j)).collect();

    // Restriction P = V^dagger B V, symmetrized to kill rounding residue.
    let mut p = ComplexMatrix::zeros(k);
    for (ci, col_i) in cols.iter().enumerate() {
        for (cj, col_j) in cols.iter().enumerate() {
            let mut s = Complex64::ZERO;
            for r in 0..n {
                let mut brow = Complex64::ZERO;
                for t in 0..n {
                    brow += b[(r, t)] * col_j[t];
                }
                s += col_i[r].conj() * brow;
            }
            p[(ci, cj)] = s;
        }
    }
    let p = p.add(&p.adjoint()).scale(Complex64::new(0.5, 0.0));

    let sub = hermitian_eig(&p, true, tol)?;
    let w = sub.vectors.expect("vectors requested");
    for r in 0..n {
        for cj in 0..k {
            let mut s = Complex64::ZERO;
            for ci in 0..k {
                s += cols[ci][r] * w[(ci, cj)];
            }
            vectors[(r, start + cj)] = s;
        }
    }
    Ok(())
}

fn rayleigh(m: &ComplexMatrix, vectors: &ComplexMatrix, j: usize) -> Complex64 {
    let n = m.dim();
    let mut out = Complex64::ZERO;
    for r in 0..n {
        let mut mv = Complex64::ZERO;
        for t in 0..n {
            mv += m[(r, t)] * vectors[(t, j)];
        }
        out += vectors[(r, j)].conj() * mv;
    }
    out
}

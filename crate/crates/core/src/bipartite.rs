//! Canonical parameters and nonlocal content of two-qubit gates.
//!
//! Every two-qubit unitary factors as local unitaries around a canonical
//! core `exp(i(x XX + y YY + z ZZ))` whose parameters can be folded into the
//! ordered chamber pi/4 >= x >= y >= |z|. The chamber point, and the derived
//! four-vector of phase angles ("nonlocal content"), are invariant under
//! local dressing and global phase, and they feed the time bounds in
//! [`crate::majorize`].
//!
//! Extraction works through the spin-flip transform: the spectrum of
//! `U * spin_flip(U)` is `exp(2i phi_j)`, so the angles are recovered from
//! eigenvalue arguments up to a branch choice that is fixed by an integer
//! bookkeeping step and a search over the four unit-determinant phase
//! representatives of the input.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    branch_arg, exp_i_hermitian, pauli_x, pauli_y, pauli_z, principal_root, unitary_eig,
    ComplexMatrix,
};
use crate::tol::Tolerances;

// Slack for the inequality constraints carried by the value types below.
// Loose enough to admit representatives built from parameters that sit a
// rounding error past a chamber boundary.
const TYPE_SLACK: f64 = 1e-8;
// Zero-sum drift allowed in a nonlocal-content vector.
const SUM_SLACK: f64 = 1e-10;
// Candidates from different phase representatives are the same point when
// their angle vectors agree to this precision.
const CANDIDATE_EPS: f64 = 1e-8;

/// Canonical chamber point of a two-qubit gate: the ordered triple
/// (x, y, z) with pi/4 >= x >= y >= |z|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalParams {
    x: f64,
    y: f64,
    z: f64,
}

impl CanonicalParams {
    /// Validates the chamber ordering (with a small slack) and wraps the
    /// triple.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let slack = Tolerances::DEFAULT.ordering_slack;
        if !(x <= FRAC_PI_4 + slack && x + slack >= y && y + slack >= z.abs()) {
            return Err(Error::OrderingViolation { x, y, z });
        }
        Ok(Self { x, y, z })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// Nonlocal content of a two-qubit gate: four nonincreasing angles summing
/// to zero, with 2 phi_1 <= 3pi/2 and 2 phi_4 >= -3pi/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlocalContent {
    phi: [f64; 4],
}

impl NonlocalContent {
    /// Validates ordering, zero sum, and the branch bounds.
    pub fn new(phi: [f64; 4]) -> Result<Self> {
        for w in phi.windows(2) {
            if w[0] + TYPE_SLACK < w[1] {
                return Err(Error::Numerical(format!(
                    "nonlocal content must be nonincreasing, got {phi:?}"
                )));
            }
        }
        let sum: f64 = phi.iter().sum();
        if sum.abs() > SUM_SLACK {
            return Err(Error::Numerical(format!(
                "nonlocal content must sum to zero, got residue {sum:.3e}"
            )));
        }
        if 2.0 * phi[0] > 3.0 * FRAC_PI_2 + TYPE_SLACK
            || 2.0 * phi[3] < -3.0 * FRAC_PI_2 - TYPE_SLACK
        {
            return Err(Error::Numerical(format!(
                "nonlocal content breaches the branch bounds, got {phi:?}"
            )));
        }
        Ok(Self { phi })
    }

    /// The angle vector of the canonical gate with parameters `p`.
    pub fn from_params(p: &CanonicalParams) -> Self {
        let (x, y, z) = (p.x, p.y, p.z);
        Self {
            phi: [x + y - z, x - y + z, -x + y + z, -x - y - z],
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.phi
    }
}

/// Nonlocal content of the conjugate determinant-normalization class.
///
/// A physical gate has four unit-determinant representatives `i^k` times the
/// normalized input, and their content vectors fall into two classes offset
/// by a quarter turn per component. [`gate_invariants`] reports the class
/// that contains the chamber point, but a product of evolution segments and
/// determinant-one locals realizes one specific class, so a time bound has
/// to consider both. This returns a zero-sum representative of the other
/// class: each angle is shifted by pi/2 and folded back into
/// `(-pi/2, pi/2]`, then the fold is rebalanced in half-turn steps on the
/// extreme components until the total returns to zero.
pub fn conjugate_content(phi: &NonlocalContent) -> NonlocalContent {
    let snap = Tolerances::DEFAULT.branch_snap;
    let mut w = phi.as_array();
    for v in w.iter_mut() {
        let mut r = *v + FRAC_PI_2;
        while r > FRAC_PI_2 + snap {
            r -= PI;
        }
        while r <= -FRAC_PI_2 + snap {
            r += PI;
        }
        *v = r;
    }
    // The fold leaves the total at an integer multiple of pi; rebalancing on
    // the extremes keeps every component inside [-3pi/4, 3pi/4].
    let mut need = (w.iter().sum::<f64>() / PI).round() as i32;
    while need != 0 {
        if need > 0 {
            let j = (0..4)
                .max_by(|&a, &b| w[a].partial_cmp(&w[b]).unwrap())
                .unwrap();
            w[j] -= PI;
            need -= 1;
        } else {
            let j = (0..4)
                .min_by(|&a, &b| w[a].partial_cmp(&w[b]).unwrap())
                .unwrap();
            w[j] += PI;
            need += 1;
        }
    }
    w.sort_by(|a, b| b.partial_cmp(a).unwrap());
    NonlocalContent::new(w).expect("folded conjugate content satisfies the type bounds")
}

/// Full invariant set extracted from a gate.
///
/// `representative` records which unit-determinant phase representative
/// (`i^k` times the determinant-normalized input) produced the canonical
/// point. At an exact chamber boundary two representatives can both pass the
/// ordering filter with genuinely different parameters; the first in `k`
/// order wins and `boundary_tie` is set so callers can tell.
#[derive(Debug, Clone)]
pub struct GateInvariants {
    pub phi: NonlocalContent,
    pub params: CanonicalParams,
    pub representative: usize,
    pub boundary_tie: bool,
}

fn check_two_qubit(m: &ComplexMatrix) -> Result<()> {
    if m.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: m.dim(),
        });
    }
    Ok(())
}

/// Spin-flip transform `(Y ⊗ Y) M^T (Y ⊗ Y)`, the transpose taken in the
/// computational basis.
pub fn spin_flip(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_two_qubit(m)?;
    let yy = pauli_y().kron(&pauli_y());
    Ok(&(&yy * &m.transpose()) * &yy)
}

/// The four unit-determinant phase representatives `i^k U / det(U)^{1/4}`.
pub fn su4_representatives(u: &ComplexMatrix, tol: &Tolerances) -> Result<[ComplexMatrix; 4]> {
    check_two_qubit(u)?;
    let residual = u.unitarity_residual();
    if residual > tol.unitary {
        return Err(Error::NotUnitary {
            residual,
            tolerance: tol.unitary,
        });
    }
    let root = principal_root(u.determinant(), 4);
    let base = u.scale(root.inv());
    Ok([
        base.clone(),
        base.scale(Complex64::I),
        base.scale(-Complex64::ONE),
        base.scale(-Complex64::I),
    ])
}

// Chamber point from an angle vector: x = (phi1+phi2)/2, y = (phi1+phi3)/2,
// z = (phi2+phi3)/2.
fn invert_phi(phi: &[f64; 4]) -> (f64, f64, f64) {
    (
        0.5 * (phi[0] + phi[1]),
        0.5 * (phi[0] + phi[2]),
        0.5 * (phi[1] + phi[2]),
    )
}

fn in_chamber(x: f64, y: f64, z: f64, slack: f64) -> bool {
    x <= FRAC_PI_4 + slack && x + slack >= y && y + slack >= z.abs()
}

/// Extracts the canonical invariants of a two-qubit gate.
///
/// For each phase representative `V`, the eigenvalue arguments of
/// `V * spin_flip(V)` are halved into angles S_j in (-pi/4, 3pi/4]. Their
/// sum is an integer multiple n of pi; subtracting pi from the n largest
/// values and resorting yields a zero-sum candidate vector. Representatives
/// whose candidate inverts into the ordered chamber survive; the first in
/// `k` order is returned.
pub fn gate_invariants(u: &ComplexMatrix, tol: &Tolerances) -> Result<GateInvariants> {
    // Survivor: representative index, its content vector, its chamber point.
    type Survivor = (usize, [f64; 4], (f64, f64, f64));
    let reps = su4_representatives(u, tol)?;
    let mut passing: Vec<Survivor> = Vec::new();

    // The flip product of an input that is unitary to eps is itself unitary
    // only to about 2 eps, so the inner diagonalization gets extra headroom.
    let inner = Tolerances {
        unitary: 3.0 * tol.unitary,
        ..*tol
    };
    for (k, v) in reps.iter().enumerate() {
        let m = v * &spin_flip(v)?;
        let spec = unitary_eig(&m, &inner)?;
        // Halved arguments arrive sorted descending by the branch order.
        let s: Vec<f64> = spec
            .values
            .iter()
            .map(|&z| 0.5 * branch_arg(z, tol.branch_snap))
            .collect();
        let total: f64 = s.iter().sum();
        let n_real = total / PI;
        let n = n_real.round();
        if (n_real - n).abs() > tol.integer_round {
            return Err(Error::Numerical(format!(
                "angle sum {total:.6e} is not an integer multiple of pi"
            )));
        }
        if !(0.0..=3.0).contains(&n) {
            return Err(Error::Numerical(format!(
                "branch count {n} outside 0..=3; spectrum is inconsistent"
            )));
        }
        let mut phi = [s[0], s[1], s[2], s[3]];
        for slot in phi.iter_mut().take(n as usize) {
            *slot -= PI;
        }
        phi.sort_by(|a, b| b.partial_cmp(a).unwrap());

        let (x, y, z) = invert_phi(&phi);
        if in_chamber(x, y, z, tol.ordering_slack) {
            passing.push((k, phi, (x, y, z)));
        }
    }

    let Some((k, phi, (x, y, z))) = passing.first().copied() else {
        return Err(Error::NoCanonicalRepresentative);
    };
    let boundary_tie = passing.iter().skip(1).any(|(_, other, _)| {
        phi.iter()
            .zip(other)
            .any(|(a, b)| (a - b).abs() > CANDIDATE_EPS)
    });

    Ok(GateInvariants {
        phi: NonlocalContent::new(phi)?,
        params: CanonicalParams::new(x, y, z)?,
        representative: k,
        boundary_tie,
    })
}

/// Nonlocal content of a gate; see [`gate_invariants`].
pub fn nonlocal_content(u: &ComplexMatrix, tol: &Tolerances) -> Result<NonlocalContent> {
    Ok(gate_invariants(u, tol)?.phi)
}

/// Canonical chamber parameters of a gate; see [`gate_invariants`].
pub fn canonical_params(u: &ComplexMatrix, tol: &Tolerances) -> Result<CanonicalParams> {
    Ok(gate_invariants(u, tol)?.params)
}

/// Chamber parameters recovered from an angle vector.
pub fn params_from_phi(phi: &NonlocalContent) -> Result<CanonicalParams> {
    let (x, y, z) = invert_phi(&phi.phi);
    if !in_chamber(x, y, z, Tolerances::DEFAULT.ordering_slack) {
        return Err(Error::OrderingViolation { x, y, z });
    }
    CanonicalParams::new(x, y, z)
}

/// The canonical gate `exp(i(x XX + y YY + z ZZ))`.
pub fn canonical_gate(p: &CanonicalParams, tol: &Tolerances) -> Result<ComplexMatrix> {
    let xx = pauli_x().kron(&pauli_x());
    let yy = pauli_y().kron(&pauli_y());
    let zz = pauli_z().kron(&pauli_z());
    let h = xx
        .scale(Complex64::new(p.x, 0.0))
        .add(&yy.scale(Complex64::new(p.y, 0.0)))
        .add(&zz.scale(Complex64::new(p.z, 0.0)));
    exp_i_hermitian(&h, 1.0, tol)
}

/// Controlled-NOT in the computational basis: the target flips when the
/// control (first qubit) is 1.
pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
}

/// The magic-basis change-of-basis matrix; canonical gates are diagonal in
/// this basis and the spin flip becomes plain transposition.
pub fn magic_basis() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let r = Complex64::new(s, 0.0);
    let i = Complex64::new(0.0, s);
    let o = Complex64::ZERO;
    ComplexMatrix::from_rows([[r, i, o, o], [o, o, i, r], [o, o, i, -r], [r, -i, o, o]])
}

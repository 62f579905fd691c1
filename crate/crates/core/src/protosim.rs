//! Piecewise simulation protocols: alternate evolution under a fixed
//! two-qubit coupling with instantaneous single-qubit unitaries, compose the
//! resulting gate, and check its duration against the minimal-time bound.
//!
//! A protocol with segments `(t_1, V_1) ... (t_k, V_k)` composes to
//!
//! ```text
//! U = E(t_1) V_1 E(t_2) V_2 ... V_{k-1} E(t_k),    E(t) = exp(-i H t),
//! ```
//!
//! where `V_j = left_j (x) right_j`. The pair carried by the final segment
//! is not applied: the product ends on an evolution, and a trailing local
//! would change neither the duration nor the nonlocal content.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{exp_i_hermitian, ComplexMatrix};
use crate::majorize::min_time_gate_ham;
use crate::sample::{random_su2, rng_from_seed};
use crate::tol::Tolerances;

/// Tolerated undershoot of a protocol's duration against the bound.
pub const VERIFY_SLACK: f64 = 1e-7;

/// One protocol leg: evolve under the coupling for `duration`, then apply
/// `left` on the first qubit and `right` on the second.
#[derive(Debug, Clone)]
pub struct Segment {
    pub duration: f64,
    pub left: ComplexMatrix,
    pub right: ComplexMatrix,
}

impl Segment {
    pub fn new(duration: f64, left: ComplexMatrix, right: ComplexMatrix) -> Self {
        Self {
            duration,
            left,
            right,
        }
    }

    /// A segment with identity locals.
    pub fn interaction_only(duration: f64) -> Self {
        Self::new(
            duration,
            ComplexMatrix::identity(2),
            ComplexMatrix::identity(2),
        )
    }
}

/// Validated ordered list of segments. The empty protocol is allowed and
/// composes to the identity.
#[derive(Debug, Clone)]
pub struct Protocol {
    segments: Vec<Segment>,
}

impl Protocol {
    /// Validates durations (finite, nonnegative) and locals (2x2, unitary).
    pub fn new(segments: Vec<Segment>, tol: &Tolerances) -> Result<Self> {
        for (j, s) in segments.iter().enumerate() {
            if !s.duration.is_finite() || s.duration < 0.0 {
                return Err(Error::InvalidProtocol {
                    reason: format!("segment {j} has duration {}", s.duration),
                });
            }
            for (side, m) in [("left", &s.left), ("right", &s.right)] {
                if m.dim() != 2 {
                    return Err(Error::InvalidProtocol {
                        reason: format!(
                            "segment {j} {side} local has dimension {}, expected 2",
                            m.dim()
                        ),
                    });
                }
                let residual = m.unitarity_residual();
                if residual > tol.unitary {
                    return Err(Error::InvalidProtocol {
                        reason: format!(
                            "segment {j} {side} local is not unitary \
                             (residual {residual:.3e}, tolerance {:.3e})",
                            tol.unitary
                        ),
                    });
                }
            }
        }
        Ok(Self { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Total interaction time, the sum of all segment durations.
    pub fn total_time(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}

/// Duration check of a composed protocol against the minimal-time bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyReport {
    /// Total interaction time spent by the protocol.
    pub t_total: f64,
    /// Minimal admissible time for the gate the protocol composes.
    pub t_min: f64,
    /// `t_total - t_min`; a sound bound keeps this above `-VERIFY_SLACK`.
    pub slack: f64,
    /// Whether `slack >= -VERIFY_SLACK`.
    pub pass: bool,
}

/// Composes the protocol's gate under coupling Hamiltonian `h`.
pub fn compose_protocol(
    h: &ComplexMatrix,
    p: &Protocol,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
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
    let count = p.segments().len();
    let mut acc = ComplexMatrix::identity(4);
    for (j, s) in p.segments().iter().enumerate() {
        acc = &acc * &exp_i_hermitian(h, -s.duration, tol)?;
        if j + 1 < count {
            acc = &acc * &s.left.kron(&s.right);
        }
    }
    Ok(acc)
}

/// Composes the protocol's gate, bounds its minimal time, and compares.
pub fn verify_protocol(
    h: &ComplexMatrix,
    p: &Protocol,
    exhaustive: bool,
    tol: &Tolerances,
) -> Result<VerifyReport> {
    let u = compose_protocol(h, p, tol)?;
    let bound = min_time_gate_ham(&u, h, exhaustive, tol)?;
    let t_total = p.total_time();
    let slack = t_total - bound.t_min;
    Ok(VerifyReport {
        t_total,
        t_min: bound.t_min,
        slack,
        pass: slack >= -VERIFY_SLACK,
    })
}

/// Seeded random protocol: `k` segments with durations uniform in
/// `[0, t_scale]` and special-unitary locals. Deterministic given the seed.
pub fn random_protocol(k: usize, t_scale: f64, seed: u64) -> Result<Protocol> {
    if k == 0 {
        return Err(Error::InvalidProtocol {
            reason: "segment count must be at least 1".into(),
        });
    }
    if !t_scale.is_finite() || t_scale <= 0.0 {
        return Err(Error::InvalidProtocol {
            reason: format!("time scale must be positive, got {t_scale}"),
        });
    }
    let mut rng = rng_from_seed(seed);
    let segments = (0..k)
        .map(|_| {
            let duration = rng.random_range(0.0..=t_scale);
            let left = random_su2(&mut rng);
            let right = random_su2(&mut rng);
            Segment::new(duration, left, right)
        })
        .collect();
    Protocol::new(segments, &Tolerances::DEFAULT)
}

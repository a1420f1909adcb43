//! Validated two-qubit density matrices.

use std::fmt;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::linalg::{self, Mat4};
use crate::tol;

/// A single failed density-matrix invariant with its measured size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// Some entry is NaN or infinite.
    NonFinite,
    /// Largest `|m_ij - conj(m_ji)|`.
    NotHermitian { deviation: f64 },
    /// `|tr m - 1|`.
    TraceNotOne { deviation: f64 },
    /// Smallest eigenvalue of the Hermitian part.
    NotPsd { min_eigenvalue: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite => write!(f, "non-finite entry"),
            Violation::NotHermitian { deviation } => {
                write!(f, "not Hermitian (max |m_ij - conj(m_ji)| = {deviation:e})")
            }
            Violation::TraceNotOne { deviation } => {
                write!(f, "trace not one (|tr - 1| = {deviation:e})")
            }
            Violation::NotPsd { min_eigenvalue } => {
                write!(
                    f,
                    "not positive semidefinite (min eigenvalue = {min_eigenvalue:e})"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid density matrix: {}", list(.violations))]
pub struct DensityError {
    pub violations: Vec<Violation>,
}

fn list(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl DensityError {
    pub fn has(&self, pred: impl Fn(&Violation) -> bool) -> bool {
        self.violations.iter().any(pred)
    }
}

/// A 4x4 Hermitian, unit-trace, positive semidefinite matrix in the basis
/// |00>, |01>, |10>, |11> (qubit A is the left factor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    m: Mat4,
}

impl DensityMatrix4 {
    /// Checks every invariant and reports all that fail. On success the
    /// stored matrix is the exact Hermitian part of `m`.
    pub fn new(m: Mat4) -> Result<Self, DensityError> {
        if m.iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(DensityError {
                violations: vec![Violation::NonFinite],
            });
        }
        let mut violations = Vec::new();

        let mut herm_dev = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                herm_dev = herm_dev.max((m[i][j] - m[j][i].conj()).norm());
            }
        }
        if herm_dev > tol::HERMITIAN {
            violations.push(Violation::NotHermitian {
                deviation: herm_dev,
            });
        }

        let trace_dev = (linalg::trace4(&m) - C64::new(1.0, 0.0)).norm();
        if trace_dev > tol::TRACE {
            violations.push(Violation::TraceNotOne {
                deviation: trace_dev,
            });
        }

        let min_ev = linalg::hermitian_eigenvalues4(&m)[0];
        if min_ev < -tol::PSD {
            violations.push(Violation::NotPsd {
                min_eigenvalue: min_ev,
            });
        }

        if !violations.is_empty() {
            return Err(DensityError { violations });
        }
        Ok(Self::from_hermitian_part(&m))
    }

    pub fn from_real(m: [[f64; 4]; 4]) -> Result<Self, DensityError> {
        Self::new(m.map(|row| row.map(|v| C64::new(v, 0.0))))
    }

    /// Caller guarantees the invariants up to round-off.
    pub(crate) fn from_hermitian_part(m: &Mat4) -> Self {
        let mut h = *m;
        for i in 0..4 {
            for j in i..4 {
                let v = 0.5 * (m[i][j] + m[j][i].conj());
                h[i][j] = v;
                h[j][i] = v.conj();
            }
        }
        Self { m: h }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            m: linalg::scale4(&linalg::identity4(), 0.25),
        }
    }

    /// Projector onto a normalized pure state given by its amplitudes.
    pub fn pure(amplitudes: [C64; 4]) -> Result<Self, DensityError> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut m = linalg::zeros4();
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = amplitudes[i] * amplitudes[j].conj() / (norm * norm);
            }
        }
        Self::new(m)
    }

    /// |phi+> = (|00> + |11>)/sqrt(2).
    pub fn bell_phi_plus() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        Self::pure([h, z, z, h]).expect("Bell state is a valid density matrix")
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.m[i][j]
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        linalg::hermitian_eigenvalues4(&self.m)
    }

    /// `tr(rho^2)` as the sum of squared entry moduli.
    pub fn purity(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// `U rho U†` for a unitary `u`.
    pub fn conjugated(&self, u: &Mat4) -> Self {
        Self::from_hermitian_part(&linalg::conjugate4(u, &self.m))
    }

    /// Exchanges the two qubits.
    pub fn swapped(&self) -> Self {
        let perm = [0usize, 2, 1, 3];
        let mut out = linalg::zeros4();
        for i in 0..4 {
            for j in 0..4 {
                out[perm[i]][perm[j]] = self.m[i][j];
            }
        }
        Self { m: out }
    }

    /// Reduced state of qubit B as a 2x2 matrix.
    pub fn marginal_b(&self) -> linalg::Mat2 {
        let mut r = [[C64::new(0.0, 0.0); 2]; 2];
        for j in 0..2 {
            for k in 0..2 {
                r[j][k] = self.m[j][k] + self.m[2 + j][2 + k];
            }
        }
        r
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        linalg::max_abs_diff4(&self.m, &other.m)
    }
}

/// Free-function form of [`DensityMatrix4::new`].
pub fn validate_density(m: Mat4) -> Result<DensityMatrix4, DensityError> {
    DensityMatrix4::new(m)
}

pub fn purity(rho: &DensityMatrix4) -> f64 {
    rho.purity()
}

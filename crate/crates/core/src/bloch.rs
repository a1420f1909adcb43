//! Pauli (Bloch) decomposition of two-qubit states.
//!
//! `rho = (1/4) [ I + x.sigma (x) I + I (x) y.sigma + sum_ij T_ij sigma_i (x) sigma_j ]`

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::density::{DensityError, DensityMatrix4};
use crate::linalg::{self, Mat3, Vec3};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlochError {
    #[error("Pauli expectation <{0}{1}> has imaginary residue {2:e}")]
    ImaginaryResidue(usize, usize, f64),
    #[error("Bloch data does not describe a physical state: {0}")]
    ReconstructionNotPsd(DensityError),
}

/// Local Bloch vectors `x` (qubit A), `y` (qubit B) and correlation matrix `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochForm {
    pub x: Vec3,
    pub y: Vec3,
    pub t: Mat3,
}

impl BlochForm {
    /// Real 4x4 coefficient matrix `C = (1/2) [[1, y^t], [x, T]]`, the
    /// expansion of rho in the orthonormal basis `sigma_a / sqrt(2)`.
    pub fn coefficient_matrix(&self) -> [[f64; 4]; 4] {
        let mut c = [[0.0; 4]; 4];
        c[0][0] = 0.5;
        for i in 0..3 {
            c[0][i + 1] = 0.5 * self.y[i];
            c[i + 1][0] = 0.5 * self.x[i];
            for j in 0..3 {
                c[i + 1][j + 1] = 0.5 * self.t[i][j];
            }
        }
        c
    }

    /// `(1 + |x|^2 + |y|^2 + |T|^2) / 4`, equal to `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        0.25 * (1.0
            + linalg::norm_sqr3(&self.x)
            + linalg::norm_sqr3(&self.y)
            + linalg::frobenius_sqr3(&self.t))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..3 {
            d = d.max((self.x[i] - other.x[i]).abs());
            d = d.max((self.y[i] - other.y[i]).abs());
            for j in 0..3 {
                d = d.max((self.t[i][j] - other.t[i][j]).abs());
            }
        }
        d
    }
}

fn expectation(rho: &DensityMatrix4, a: usize, b: usize) -> Result<f64, BlochError> {
    let op = linalg::kron2(&linalg::sigma(a), &linalg::sigma(b));
    let v: C64 = linalg::trace4(&linalg::mul4(rho.matrix(), &op));
    if v.im.abs() > tol::BLOCH_IMAG {
        return Err(BlochError::ImaginaryResidue(a, b, v.im));
    }
    Ok(v.re)
}

/// `x_i = tr(rho sigma_i (x) I)`, `y_j = tr(rho I (x) sigma_j)`,
/// `T_ij = tr(rho sigma_i (x) sigma_j)`.
pub fn bloch_decompose(rho: &DensityMatrix4) -> Result<BlochForm, BlochError> {
    let mut x = [0.0; 3];
    let mut y = [0.0; 3];
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        x[i] = expectation(rho, i + 1, 0)?;
        y[i] = expectation(rho, 0, i + 1)?;
        for j in 0..3 {
            t[i][j] = expectation(rho, i + 1, j + 1)?;
        }
    }
    Ok(BlochForm { x, y, t })
}

/// Inverse of [`bloch_decompose`].
pub fn reconstruct(b: &BlochForm) -> Result<DensityMatrix4, BlochError> {
    let mut coeff = [[0.0; 4]; 4];
    coeff[0][0] = 1.0;
    for i in 0..3 {
        coeff[0][i + 1] = b.y[i];
        coeff[i + 1][0] = b.x[i];
        for j in 0..3 {
            coeff[i + 1][j + 1] = b.t[i][j];
        }
    }
    let mut m = linalg::zeros4();
    for (alpha, row) in coeff.iter().enumerate() {
        for (beta, &c) in row.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let op = linalg::kron2(&linalg::sigma(alpha), &linalg::sigma(beta));
            m = linalg::add4(&m, &linalg::scale4(&op, 0.25 * c));
        }
    }
    DensityMatrix4::new(m).map_err(BlochError::ReconstructionNotPsd)
}

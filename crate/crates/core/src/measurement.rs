//! One-qubit von Neumann measurements and their action on two-qubit states.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::density::DensityMatrix4;
use crate::linalg::{self, Mat2, Vec3};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasurementError {
    #[error("measurement axis has norm {0}, expected 1")]
    NotUnit(f64),
    #[error("measurement axis has non-finite components")]
    NonFinite,
    #[error("at least one measurement axis is required")]
    NoAxis,
}

/// Unit vector `n` selecting the projector pair `(I +- n.sigma)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAxis {
    n: Vec3,
}

impl MeasurementAxis {
    pub fn new(n: Vec3) -> Result<Self, MeasurementError> {
        if n.iter().any(|v| !v.is_finite()) {
            return Err(MeasurementError::NonFinite);
        }
        let norm = linalg::norm_sqr3(&n).sqrt();
        if (norm - 1.0).abs() > tol::AXIS_NORM {
            return Err(MeasurementError::NotUnit(norm));
        }
        Ok(Self { n })
    }

    /// Rescales a nonzero finite vector onto the sphere.
    pub fn normalized(v: Vec3) -> Result<Self, MeasurementError> {
        let norm = linalg::norm_sqr3(&v).sqrt();
        if !norm.is_finite() {
            return Err(MeasurementError::NonFinite);
        }
        if norm == 0.0 {
            return Err(MeasurementError::NotUnit(0.0));
        }
        Ok(Self {
            n: [v[0] / norm, v[1] / norm, v[2] / norm],
        })
    }

    /// Polar angle `theta` from +z, azimuth `phi` from +x.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            n: [st * cp, st * sp, ct],
        }
    }

    pub fn x() -> Self {
        Self { n: [1.0, 0.0, 0.0] }
    }

    pub fn y() -> Self {
        Self { n: [0.0, 1.0, 0.0] }
    }

    pub fn z() -> Self {
        Self { n: [0.0, 0.0, 1.0] }
    }

    pub fn vector(&self) -> Vec3 {
        self.n
    }

    /// `(I + sign n.sigma)/2` for `sign = +-1`.
    pub fn projector(&self, sign: f64) -> Mat2 {
        let [nx, ny, nz] = self.n;
        let h = 0.5 * sign;
        [
            [C64::new(0.5 + h * nz, 0.0), C64::new(h * nx, -h * ny)],
            [C64::new(h * nx, h * ny), C64::new(0.5 - h * nz, 0.0)],
        ]
    }

    /// A unit spinor `u` with `|u><u| = (I + n.sigma)/2`, up to phase.
    pub fn spinor(&self) -> [C64; 2] {
        let [nx, ny, nz] = self.n;
        if nz >= 0.0 {
            let c = ((1.0 + nz) / 2.0).sqrt();
            let s = 1.0 / (2.0 * (1.0 + nz)).sqrt();
            [C64::new(c, 0.0), C64::new(nx * s, ny * s)]
        } else {
            let c = ((1.0 - nz) / 2.0).sqrt();
            let s = 1.0 / (2.0 * (1.0 - nz)).sqrt();
            [C64::new(nx * s, -ny * s), C64::new(c, 0.0)]
        }
    }
}

fn projector_set(axis: Option<&MeasurementAxis>) -> Vec<Mat2> {
    match axis {
        Some(a) => vec![a.projector(1.0), a.projector(-1.0)],
        None => vec![linalg::sigma(0)],
    }
}

/// Non-selective measurement `sum_kl (P_k (x) Q_l) rho (P_k (x) Q_l)` with
/// the identity standing in for an absent side.
pub fn apply_measurement(
    rho: &DensityMatrix4,
    a: Option<&MeasurementAxis>,
    b: Option<&MeasurementAxis>,
) -> Result<DensityMatrix4, MeasurementError> {
    if a.is_none() && b.is_none() {
        return Err(MeasurementError::NoAxis);
    }
    let pa = projector_set(a);
    let pb = projector_set(b);
    let mut out = linalg::zeros4();
    for p in &pa {
        for q in &pb {
            let k = linalg::kron2(p, q);
            out = linalg::add4(&out, &linalg::mul4(&linalg::mul4(&k, rho.matrix()), &k));
        }
    }
    Ok(DensityMatrix4::from_hermitian_part(&out))
}

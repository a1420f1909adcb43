//! X-state constructors, phase normalization and the example families.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::density::{DensityError, DensityMatrix4};
use crate::linalg::{self, Mat4};
use crate::measures::{Measure, XStateError, XStateParams};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatesError {
    #[error("{0}")]
    DomainError(String),
    #[error(transparent)]
    InvalidParams(#[from] XStateError),
}

fn domain(msg: String) -> StatesError {
    StatesError::DomainError(msg)
}

/// The 4x4 X-state matrix for `p`.
pub fn x_state(p: &XStateParams) -> Result<DensityMatrix4, DensityError> {
    let mut m = linalg::zeros4();
    for i in 0..4 {
        m[i][i] = C64::new(p.d[i], 0.0);
    }
    m[0][3] = p.a03;
    m[3][0] = p.a03.conj();
    m[1][2] = p.a12;
    m[2][1] = p.a12.conj();
    DensityMatrix4::new(m)
}

/// Local phase rotation that makes both antidiagonals real and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseNormalization {
    pub theta1: f64,
    pub theta2: f64,
    pub normalized: XStateParams,
}

impl PhaseNormalization {
    /// `U = exp(-i theta1 sigma_z) (x) exp(-i theta2 sigma_z)`, diagonal.
    pub fn unitary(&self) -> Mat4 {
        let mut u = linalg::zeros4();
        let sign = [1.0, -1.0];
        for j in 0..2 {
            for k in 0..2 {
                let phase = -(self.theta1 * sign[j] + self.theta2 * sign[k]);
                u[2 * j + k][2 * j + k] = C64::from_polar(1.0, phase);
            }
        }
        u
    }

    /// `U^dagger rho U`, which carries `x_state(p)` to `x_state(normalized)`.
    pub fn apply(&self, rho: &DensityMatrix4) -> DensityMatrix4 {
        rho.conjugated(&linalg::adjoint4(&self.unitary()))
    }
}

fn arg_or_zero(z: C64) -> f64 {
    if z.norm() == 0.0 {
        0.0
    } else {
        z.arg()
    }
}

pub fn normalize_x_phases(p: &XStateParams) -> PhaseNormalization {
    let arg03 = arg_or_zero(p.a03);
    let arg12 = arg_or_zero(p.a12);
    let normalized = XStateParams {
        d: p.d,
        a03: C64::new(p.a03.norm(), 0.0),
        a12: C64::new(p.a12.norm(), 0.0),
    };
    PhaseNormalization {
        theta1: -(arg03 + arg12) / 4.0,
        theta2: -(arg03 - arg12) / 4.0,
        normalized,
    }
}

/// `a |phi+><phi+| + (1 - a) |11><11|`, `a` in (0, 1].
pub fn example1(a: f64) -> Result<XStateParams, StatesError> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(domain(format!("example 1 needs a in (0, 1], got {a}")));
    }
    Ok(XStateParams::real(
        [a / 2.0, 0.0, 0.0, 1.0 - a / 2.0],
        a / 2.0,
        0.0,
    )?)
}

/// `a |psi+><psi+| + (1 - a) |11><11|`, `a` in [0, 1].
pub fn example2(a: f64) -> Result<XStateParams, StatesError> {
    if !(0.0..=1.0).contains(&a) {
        return Err(domain(format!("example 2 needs a in [0, 1], got {a}")));
    }
    Ok(XStateParams::real(
        [0.0, a / 2.0, a / 2.0, 1.0 - a],
        0.0,
        a / 2.0,
    )?)
}

/// Populations `((1 - a)/3, 1/3, 1/3, a/3)` with `rho_12 = 1/3`.
pub fn example3(a: f64) -> Result<XStateParams, StatesError> {
    if !(0.0..=1.0).contains(&a) {
        return Err(domain(format!("example 3 needs a in [0, 1], got {a}")));
    }
    let third = 1.0 / 3.0;
    Ok(XStateParams::real(
        [(1.0 - a) / 3.0, third, third, a / 3.0],
        0.0,
        third,
    )?)
}

/// Two atoms in a resonant cavity (vacuum field) started in
/// `alpha |gg> + beta |ee>`; amplitudes as functions of `gt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TCAmplitudes {
    pub c1: C64,
    pub c2: C64,
    pub c3: C64,
    pub c4: C64,
}

impl TCAmplitudes {
    pub fn norm_sqr(&self) -> f64 {
        [self.c1, self.c2, self.c3, self.c4]
            .iter()
            .map(|c| c.norm_sqr())
            .sum()
    }
}

fn check_amplitude(name: &str, v: f64) -> Result<(), StatesError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {v}")))
    }
}

fn check_time(gt: f64) -> Result<(), StatesError> {
    if gt.is_finite() && gt >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "dimensionless time must be finite and >= 0, got {gt}"
        )))
    }
}

pub fn tc_amplitudes(alpha: f64, beta: f64, gt: f64) -> Result<TCAmplitudes, StatesError> {
    check_amplitude("alpha", alpha)?;
    check_amplitude("beta", beta)?;
    check_time(gt)?;
    let norm = alpha * alpha + beta * beta;
    if (norm - 1.0).abs() > tol::NORMALIZATION {
        return Err(domain(format!("alpha^2 + beta^2 = {norm}, expected 1")));
    }
    let w = 6.0f64.sqrt() * gt;
    let (s, c) = w.sin_cos();
    Ok(TCAmplitudes {
        c1: C64::new(-(2.0f64.sqrt() / 3.0) * beta * (1.0 - c), 0.0),
        c2: C64::new(0.0, -(beta / 3.0f64.sqrt()) * s),
        c3: C64::new(beta * (1.0 + (c - 1.0) / 3.0), 0.0),
        c4: C64::new(alpha, 0.0),
    })
}

/// Reduced two-atom state of the cavity model.
pub fn example4(alpha: f64, beta: f64, gt: f64) -> Result<XStateParams, StatesError> {
    let c = tc_amplitudes(alpha, beta, gt)?;
    let half = c.c2.norm_sqr() / 2.0;
    Ok(XStateParams::real(
        [
            c.c1.norm_sqr() + c.c4.norm_sqr(),
            half,
            half,
            c.c3.norm_sqr(),
        ],
        (c.c3 * c.c4).norm(),
        half,
    )?)
}

/// Two atoms in a common vacuum reservoir started in `alpha |gg> + beta |ee>`,
/// `beta = sqrt(1 - alpha^2)`; amplitudes as functions of `gamma t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirAmplitudes {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub alpha: f64,
}

impl ReservoirAmplitudes {
    pub fn norm_sqr(&self) -> f64 {
        self.alpha * self.alpha + self.c1 * self.c1 + self.c2 * self.c2 + self.c3 * self.c3
    }
}

/// Largest negative round-off tolerated under the square root of `c3`.
const SQRT_ROUNDOFF: f64 = 1e-14;

pub fn reservoir_amplitudes(alpha: f64, gt: f64) -> Result<ReservoirAmplitudes, StatesError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(domain(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    check_time(gt)?;
    let beta = (1.0 - alpha * alpha).sqrt();
    let decay = (-gt).exp();
    let c1 = beta * decay;
    let c2 = beta * (2.0 * gt).sqrt() * decay;
    let mut rest = 1.0 - alpha * alpha - c1 * c1 - c2 * c2;
    if rest < 0.0 {
        if rest < -SQRT_ROUNDOFF {
            return Err(domain(format!("negative c3^2 = {rest}")));
        }
        rest = 0.0;
    }
    Ok(ReservoirAmplitudes {
        c1,
        c2,
        c3: rest.sqrt(),
        alpha,
    })
}

pub fn example5(alpha: f64, gt: f64) -> Result<XStateParams, StatesError> {
    let r = reservoir_amplitudes(alpha, gt)?;
    let half = r.c2 * r.c2 / 2.0;
    Ok(XStateParams::real(
        [alpha * alpha + r.c3 * r.c3, half, half, r.c1 * r.c1],
        alpha * r.c1,
        half,
    )?)
}

/// Example-4 sweep variable `tau = sqrt(6) gt / (2 pi)`, period 1.
pub fn tau_to_gt(tau: f64) -> f64 {
    2.0 * std::f64::consts::PI * tau / 6.0f64.sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceExample {
    Ex1,
    Ex2,
    Ex3,
}

/// Published closed-form curves of examples 1-3, kept as test fixtures.
pub fn example_reference(
    id: ReferenceExample,
    measure: Measure,
    a: f64,
) -> Result<f64, StatesError> {
    if !(0.0..=1.0).contains(&a) {
        return Err(domain(format!(
            "reference curves need a in [0, 1], got {a}"
        )));
    }
    Ok(match (id, measure) {
        (ReferenceExample::Ex1, _) => a * a / 2.0,
        (ReferenceExample::Ex2, Measure::Ggqd) if a <= 0.6 => a * a / 2.0,
        (ReferenceExample::Ex2, Measure::Ggqd) => (3.0 - 8.0 * a + 7.0 * a * a) / 4.0,
        (ReferenceExample::Ex2, Measure::Gd) if a <= 0.5 => a * a / 2.0,
        (ReferenceExample::Ex2, Measure::Gd) => (1.0 - 3.0 * a + 3.0 * a * a) / 2.0,
        (ReferenceExample::Ex3, Measure::Ggqd) => (7.0 - 8.0 * a + 8.0 * a * a) / 36.0,
        (ReferenceExample::Ex3, Measure::Gd) => (3.0 - 2.0 * a + 2.0 * a * a) / 18.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{gd_x, ggqd_x};

    #[test]
    fn x_state_builds_bell_and_mixed() {
        let bell = x_state(&example1(1.0).unwrap()).unwrap();
        assert!(bell.max_abs_diff(&DensityMatrix4::bell_phi_plus()) < 1e-15);
        let mm = x_state(&XStateParams::real([0.25; 4], 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(mm, DensityMatrix4::maximally_mixed());
    }

    #[test]
    fn example2_matrix() {
        let rho = x_state(&example2(0.8).unwrap()).unwrap();
        assert!((rho.entry(1, 1).re - 0.4).abs() < 1e-15);
        assert!((rho.entry(1, 2).re - 0.4).abs() < 1e-15);
        assert!((rho.entry(3, 3).re - 0.2).abs() < 1e-15);
    }

    #[test]
    fn phase_normalization_conjugates_to_real_form() {
        let p = XStateParams::new(
            [0.4, 0.1, 0.2, 0.3],
            C64::from_polar(0.2, std::f64::consts::PI / 3.0),
            C64::from_polar(0.1, -std::f64::consts::PI / 5.0),
        )
        .unwrap();
        let n = normalize_x_phases(&p);
        assert_eq!(n.normalized.d, p.d);
        assert!((n.normalized.a03.re - 0.2).abs() < 1e-15);
        assert!((n.normalized.a12.re - 0.1).abs() < 1e-15);
        let rotated = n.apply(&x_state(&p).unwrap());
        assert!(rotated.max_abs_diff(&x_state(&n.normalized).unwrap()) < 1e-12);
    }

    #[test]
    fn purely_imaginary_coherence() {
        let p = XStateParams::new([0.5, 0.0, 0.0, 0.5], C64::new(0.0, 0.3), C64::new(0.0, 0.0))
            .unwrap();
        let n = normalize_x_phases(&p);
        assert_eq!(n.normalized.a03, C64::new(0.3, 0.0));
        let rotated = n.apply(&x_state(&p).unwrap());
        assert!(rotated.max_abs_diff(&x_state(&n.normalized).unwrap()) < 1e-12);
    }

    #[test]
    fn real_input_is_untouched() {
        let p = XStateParams::real([0.4, 0.1, 0.2, 0.3], 0.2, 0.1).unwrap();
        let n = normalize_x_phases(&p);
        assert_eq!((n.theta1, n.theta2), (0.0, 0.0));
        assert_eq!(n.normalized, p);
        let zero = XStateParams::real([0.4, 0.1, 0.2, 0.3], 0.0, 0.0).unwrap();
        let n = normalize_x_phases(&zero);
        assert_eq!((n.theta1, n.theta2), (0.0, 0.0));
    }

    #[test]
    fn example_domains() {
        assert!(example1(0.0).is_err());
        assert!(example1(1.1).is_err());
        assert!(example2(-0.1).is_err());
        assert!(example3(f64::NAN).is_err());
        assert!(tc_amplitudes(0.6, 0.6, 1.0).is_err());
        assert!(tc_amplitudes(0.6, 0.8, -1.0).is_err());
        assert!(reservoir_amplitudes(1.2, 1.0).is_err());
        assert!(example_reference(ReferenceExample::Ex2, Measure::Gd, 1.5).is_err());
    }

    #[test]
    fn example_values() {
        let p = example1(0.5).unwrap();
        assert!((ggqd_x(&p).unwrap().value - 0.125).abs() < 1e-15);
        assert!((gd_x(&p).unwrap().value - 0.125).abs() < 1e-15);
        let p = example3(0.0).unwrap();
        assert!((ggqd_x(&p).unwrap().value - 7.0 / 36.0).abs() < 1e-15);
        let p = example2(0.0).unwrap();
        assert_eq!(ggqd_x(&p).unwrap().value, 0.0);
    }

    #[test]
    fn tc_initial_and_recurrence() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = tc_amplitudes(h, h, 0.0).unwrap();
        assert_eq!((c.c1.norm(), c.c2.norm()), (0.0, 0.0));
        assert_eq!((c.c3.re, c.c4.re), (h, h));
        let c = tc_amplitudes(h, h, tau_to_gt(1.0)).unwrap();
        assert!(c.c1.norm() < 1e-15 && c.c2.norm() < 1e-15);
        assert!((c.c3.re - h).abs() < 1e-15);
        // Half period: cos = -1, c1 = -(2 sqrt 2 / 3) beta, c3 = beta / 3.
        let c = tc_amplitudes(h, h, tau_to_gt(0.5)).unwrap();
        assert!((c.c1.re + 2.0 * 2.0f64.sqrt() / 3.0 * h).abs() < 1e-15);
        assert!((c.c3.re - h / 3.0).abs() < 1e-15);
        assert!((c.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn example4_starts_as_bell_corner() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = example4(h, h, 0.0).unwrap();
        assert!((ggqd_x(&p).unwrap().value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn reservoir_limits() {
        let r = reservoir_amplitudes(0.1, 0.0).unwrap();
        assert!((r.c1 - 0.99f64.sqrt()).abs() < 1e-15);
        assert_eq!((r.c2, r.c3), (0.0, 0.0));
        let r = reservoir_amplitudes(0.1, 40.0).unwrap();
        assert!(r.c1 < 1e-15 && r.c2 < 1e-15);
        assert!((r.c3 - 0.99f64.sqrt()).abs() < 1e-15);
        let r = reservoir_amplitudes(0.1, 1.0).unwrap();
        assert!((r.c1 - 0.99f64.sqrt() * (-1.0f64).exp()).abs() < 1e-15);
        assert!((r.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn example5_initial_value() {
        let p = example5(0.1, 0.0).unwrap();
        assert!((ggqd_x(&p).unwrap().value - 0.0198).abs() < 1e-15);
        assert!((gd_x(&p).unwrap().value - 0.0198).abs() < 1e-15);
    }

    #[test]
    fn reference_curves() {
        let r = |id, m, a| example_reference(id, m, a).unwrap();
        assert_eq!(r(ReferenceExample::Ex2, Measure::Ggqd, 0.5), 0.125);
        assert!((r(ReferenceExample::Ex3, Measure::Gd, 0.5) - 5.0 / 36.0).abs() < 1e-16);
        assert_eq!(r(ReferenceExample::Ex1, Measure::Gd, 0.0), 0.0);
        // Both branches meet at the breakpoints.
        assert!((r(ReferenceExample::Ex2, Measure::Ggqd, 0.6) - 0.18).abs() < 1e-15);
        assert!(((3.0 - 8.0 * 0.6 + 7.0 * 0.36) / 4.0 - 0.18f64).abs() < 1e-15);
    }
}

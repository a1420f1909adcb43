//! Geometric discord (one-sided, measurement on A) and geometric global
//! quantum discord (two-sided) of two-qubit states.
//!
//! Both are squared Hilbert-Schmidt distances to the nearest state left
//! invariant by some local von Neumann measurement:
//!
//! ```text
//! D(rho)   = tr(rho^2) - max_a   tr[(Pi_a (x) I)(rho)]^2
//! D^G(rho) = tr(rho^2) - max_a,b tr[(Pi_a (x) Pi_b)(rho)]^2
//! ```
//!
//! The X-state closed forms assume real nonnegative antidiagonals; use
//! [`crate::states::normalize_x_phases`] first for complex input.

use std::fmt;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::bloch::{bloch_decompose, BlochError, BlochForm};
use crate::density::DensityMatrix4;
use crate::linalg::{self, Vec3};
use crate::measurement::MeasurementAxis;
use crate::sphere::{self, OptimizerConfig, OptimizerDidNotConverge};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum XStateError {
    #[error("non-finite X-state parameter")]
    NonFinite,
    #[error("negative population d{index} = {value}")]
    NegativePopulation { index: usize, value: f64 },
    #[error("populations sum to {0}, expected 1")]
    NotNormalized(f64),
    #[error("|rho_03| = {modulus} exceeds sqrt(d0 d3) = {bound}")]
    Coherence03 { modulus: f64, bound: f64 },
    #[error("|rho_12| = {modulus} exceeds sqrt(d1 d2) = {bound}")]
    Coherence12 { modulus: f64, bound: f64 },
}

/// An X state: populations `d = (rho_00, rho_11, rho_22, rho_33)` and the
/// antidiagonal coherences `rho_03`, `rho_12`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub d: [f64; 4],
    pub a03: C64,
    pub a12: C64,
}

impl XStateParams {
    pub fn new(d: [f64; 4], a03: C64, a12: C64) -> Result<Self, XStateError> {
        let finite = d.iter().all(|v| v.is_finite())
            && [a03, a12]
                .iter()
                .all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(XStateError::NonFinite);
        }
        if let Some((index, &value)) = d.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(XStateError::NegativePopulation { index, value });
        }
        let sum: f64 = d.iter().sum();
        if (sum - 1.0).abs() > tol::NORMALIZATION {
            return Err(XStateError::NotNormalized(sum));
        }
        let bound03 = (d[0] * d[3]).sqrt();
        if a03.norm() > bound03 + tol::X_BLOCK {
            return Err(XStateError::Coherence03 {
                modulus: a03.norm(),
                bound: bound03,
            });
        }
        let bound12 = (d[1] * d[2]).sqrt();
        if a12.norm() > bound12 + tol::X_BLOCK {
            return Err(XStateError::Coherence12 {
                modulus: a12.norm(),
                bound: bound12,
            });
        }
        Ok(Self { d, a03, a12 })
    }

    /// Real antidiagonals.
    pub fn real(d: [f64; 4], a03: f64, a12: f64) -> Result<Self, XStateError> {
        Self::new(d, C64::new(a03, 0.0), C64::new(a12, 0.0))
    }

    /// Exchanges the two qubits (`rho_11 <-> rho_22`, `rho_12 -> conj`).
    pub fn swapped(&self) -> Self {
        Self {
            d: [self.d[0], self.d[2], self.d[1], self.d[3]],
            a03: self.a03,
            a12: self.a12.conj(),
        }
    }

    fn real_parts(&self) -> Result<(f64, f64), MeasureError> {
        let ok = |z: C64| z.im.abs() <= tol::COMPLEX_INPUT && z.re >= 0.0;
        if !ok(self.a03) || !ok(self.a12) {
            return Err(MeasureError::ComplexInput {
                a03: self.a03,
                a12: self.a12,
            });
        }
        Ok((self.a03.re, self.a12.re))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error(
        "X-state closed forms need real nonnegative antidiagonals (got rho_03 = {a03}, \
         rho_12 = {a12}); normalize the phases first"
    )]
    ComplexInput { a03: C64, a12: C64 },
    #[error(transparent)]
    Bloch(#[from] BlochError),
    #[error(transparent)]
    OptimizerDidNotConverge(#[from] OptimizerDidNotConverge),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Gd,
    Ggqd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    AnalyticX,
    Dakic,
    GeneralOpt,
    BruteForce,
    TqcSequential,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::AnalyticX => "analytic_x",
            Method::Dakic => "dakic",
            Method::GeneralOpt => "general_opt",
            Method::BruteForce => "brute_force",
            Method::TqcSequential => "tqc_sequential",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Optimal measurement axes. `None` marks an unmeasured side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximizer {
    pub a: Option<MeasurementAxis>,
    pub b: Option<MeasurementAxis>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureResult {
    pub value: f64,
    pub method: Method,
    pub maximizer: Option<Maximizer>,
    /// Set when a round-off negative in `[-1e-10, 0)` was clamped to zero.
    pub clamped: bool,
}

impl MeasureResult {
    pub fn new(value: f64, method: Method, maximizer: Option<Maximizer>) -> Self {
        let (value, clamped) = if (-tol::CLAMP..0.0).contains(&value) {
            (0.0, true)
        } else {
            (value, false)
        };
        Self {
            value,
            method,
            maximizer,
            clamped,
        }
    }
}

/// Scalars entering the X-state closed forms.
#[derive(Debug, Clone, Copy)]
struct XTerms {
    /// `(rho_12 + rho_03)^2`
    coherence_sum_sq: f64,
    /// `sum d_i^2 - 1/4`
    populations: f64,
    /// `(1/2) sum d_i^2 - d0 d2 - d1 d3`
    populations_half: f64,
    /// `2 (rho_12^2 + rho_03^2)`
    coherence: f64,
}

fn x_terms(p: &XStateParams) -> Result<XTerms, MeasureError> {
    let (a03, a12) = p.real_parts()?;
    let d = p.d;
    // Grouped so that exchanging d1 and d2 leaves the sum bit-identical.
    let sum_sq = (d[0] * d[0] + d[3] * d[3]) + (d[1] * d[1] + d[2] * d[2]);
    Ok(XTerms {
        coherence_sum_sq: (a12 + a03).powi(2),
        populations: sum_sq - 0.25,
        populations_half: 0.5 * sum_sq - d[0] * d[2] - d[1] * d[3],
        coherence: 2.0 * (a12 * a12 + a03 * a03),
    })
}

/// `D = |x|^2 + |T|^2 - k_max` over four, `k_max` the top eigenvalue of
/// `x x^t + T T^t`. The maximizer is the matching eigenvector.
pub fn gd_dakic(rho: &DensityMatrix4) -> Result<MeasureResult, MeasureError> {
    let b = bloch_decompose(rho)?;
    Ok(gd_dakic_bloch(&b))
}

pub fn gd_dakic_bloch(b: &BlochForm) -> MeasureResult {
    let tt = linalg::mat3_transpose(&b.t);
    let mut m = linalg::outer3(&b.x, &b.x);
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] += (0..3).map(|k| b.t[i][k] * tt[k][j]).sum::<f64>();
        }
    }
    let k_max = linalg::sym3_max_eigenvalue(&m);
    let value = 0.25 * (linalg::norm_sqr3(&b.x) + linalg::frobenius_sqr3(&b.t) - k_max);
    let a = MeasurementAxis::normalized(linalg::sym3_top_eigenvector(&m)).ok();
    MeasureResult::new(value, Method::Dakic, Some(Maximizer { a, b: None }))
}

/// Geometric discord of an X state in closed form.
pub fn gd_x(p: &XStateParams) -> Result<MeasureResult, MeasureError> {
    let t = x_terms(p)?;
    let value = t.populations_half + t.coherence - t.populations_half.max(t.coherence_sum_sq);
    Ok(MeasureResult::new(value, Method::AnalyticX, None))
}

/// Geometric global quantum discord of an X state in closed form.
pub fn ggqd_x(p: &XStateParams) -> Result<MeasureResult, MeasureError> {
    let t = x_terms(p)?;
    let value = t.populations + t.coherence - t.populations.max(t.coherence_sum_sq);
    Ok(MeasureResult::new(value, Method::AnalyticX, None))
}

/// Largest eigenvalue of `|u><u| + |v><v|` for two real 3-vectors.
fn two_vector_top_eigenvalue(u: &Vec3, v: &Vec3) -> f64 {
    let uu = linalg::norm_sqr3(u);
    let vv = linalg::norm_sqr3(v);
    let uv = linalg::dot3(u, v);
    0.5 * (uu + vv + ((uu - vv).powi(2) + 4.0 * uv * uv).sqrt())
}

/// GGQD of any two-qubit state. The maximization over the A-side axis is
/// done in closed form (top eigenvalue of `x x^t + (T b)(T b)^t`); the
/// remaining one over the B-side axis `b` runs on the sphere optimizer.
pub fn ggqd_general(
    rho: &DensityMatrix4,
    opt: &OptimizerConfig,
) -> Result<MeasureResult, MeasureError> {
    let bf = bloch_decompose(rho)?;
    let objective = |b: &Vec3| {
        let tb = linalg::mat3_vec(&bf.t, b);
        two_vector_top_eigenvalue(&bf.x, &tb) + linalg::dot3(&bf.y, b).powi(2)
    };
    let best = sphere::maximize(&objective, opt)?;
    let total = linalg::norm_sqr3(&bf.x) + linalg::norm_sqr3(&bf.y) + linalg::frobenius_sqr3(&bf.t);
    let value = 0.25 * (total - best.value);

    let tb = linalg::mat3_vec(&bf.t, &best.argmax);
    let mut m = linalg::outer3(&bf.x, &bf.x);
    let tbo = linalg::outer3(&tb, &tb);
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] += tbo[i][j];
        }
    }
    let maximizer = Maximizer {
        a: MeasurementAxis::normalized(linalg::sym3_top_eigenvector(&m)).ok(),
        b: MeasurementAxis::normalized(best.argmax).ok(),
    };
    Ok(MeasureResult::new(
        value,
        Method::GeneralOpt,
        Some(maximizer),
    ))
}

type Mat24 = [[f64; 4]; 2];

/// `(1/sqrt 2) [[1, n^t], [1, -n^t]]`
fn measurement_block(n: &Vec3) -> Mat24 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [
        [s, s * n[0], s * n[1], s * n[2]],
        [s, -s * n[0], -s * n[1], -s * n[2]],
    ]
}

/// `C B^t B C^t`.
fn sandwich(c: &[[f64; 4]; 4], b: &Mat24) -> [[f64; 4]; 4] {
    // M = C B^t is 4x2.
    let mut m = [[0.0; 2]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..4).map(|k| c[i][k] * b[j][k]).sum();
        }
    }
    let mut k = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            k[i][j] = m[i][0] * m[j][0] + m[i][1] * m[j][1];
        }
    }
    k
}

fn trace_akat(a: &Mat24, k: &[[f64; 4]; 4]) -> f64 {
    let mut tr = 0.0;
    for row in a {
        for i in 0..4 {
            for j in 0..4 {
                tr += row[i] * k[i][j] * row[j];
            }
        }
    }
    tr
}

/// GGQD from the matrix form `tr(C C^t) - max_{A,B} tr(A C B^t B C^t A^t)`,
/// with `A`, `B` the 2x4 blocks built from unit axes `a`, `b`. For fixed `b`
/// the maximum over `a` is `K_00` plus the top eigenvalue of the lower 3x3
/// block of `K = C B^t B C^t`. Independent of [`ggqd_general`]'s closed-form
/// inner step.
pub fn ggqd_matrix_form(
    rho: &DensityMatrix4,
    opt: &OptimizerConfig,
) -> Result<MeasureResult, MeasureError> {
    let c = bloch_decompose(rho)?.coefficient_matrix();
    let lower = |k: &[[f64; 4]; 4]| {
        [
            [k[1][1], k[1][2], k[1][3]],
            [k[2][1], k[2][2], k[2][3]],
            [k[3][1], k[3][2], k[3][3]],
        ]
    };
    let objective = |b: &Vec3| {
        let k = sandwich(&c, &measurement_block(b));
        k[0][0] + linalg::sym3_max_eigenvalue(&lower(&k))
    };
    let best = sphere::maximize(&objective, opt)?;

    let k = sandwich(&c, &measurement_block(&best.argmax));
    let a_axis = linalg::sym3_top_eigenvector(&lower(&k));
    let achieved = trace_akat(&measurement_block(&a_axis), &k);
    let tr_cct: f64 = c.iter().flatten().map(|v| v * v).sum();
    let value = tr_cct - achieved.max(best.value);

    let maximizer = Maximizer {
        a: MeasurementAxis::normalized(a_axis).ok(),
        b: MeasurementAxis::normalized(best.argmax).ok(),
    };
    Ok(MeasureResult::new(
        value,
        Method::GeneralOpt,
        Some(maximizer),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// `(rho_12 + rho_03)^2 >= sum d^2 - 1/4`
    Case1,
    /// `sum d^2 - 1/4 >= (rho_12 + rho_03)^2 >= (1/2) sum d^2 - d0 d2 - d1 d3`
    Case2,
    /// `(rho_12 + rho_03)^2 <= (1/2) sum d^2 - d0 d2 - d1 d3`
    Case3,
}

/// Which ordering of the three compared quantities holds for an X state.
/// `mid >= rhs` always, so these three cases are exhaustive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XCase {
    pub tag: CaseTag,
    /// `(rho_12 + rho_03)^2`
    pub lhs: f64,
    /// `sum d^2 - 1/4`
    pub mid: f64,
    /// `(1/2) sum d^2 - d0 d2 - d1 d3`
    pub rhs: f64,
}

/// Ties go to the lower-numbered case.
pub fn classify_x_case(p: &XStateParams) -> Result<XCase, MeasureError> {
    let t = x_terms(p)?;
    let (lhs, mid, rhs) = (t.coherence_sum_sq, t.populations, t.populations_half);
    let tag = if lhs >= mid {
        CaseTag::Case1
    } else if lhs >= rhs {
        CaseTag::Case2
    } else {
        CaseTag::Case3
    };
    Ok(XCase { tag, lhs, mid, rhs })
}

/// `D^G - D` for an X state from the per-case gap expressions.
pub fn gap_x(p: &XStateParams) -> Result<f64, MeasureError> {
    let case = classify_x_case(p)?;
    let d = p.d;
    Ok(match case.tag {
        CaseTag::Case1 => (2.0 * (d[0] + d[2]) - 1.0).powi(2) / 4.0,
        CaseTag::Case2 => case.lhs - 0.5 * ((d[0] - d[2]).powi(2) + (d[1] - d[3]).powi(2)),
        CaseTag::Case3 => 0.0,
    })
}

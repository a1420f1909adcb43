//! Brute-force measurement search used to check the closed forms.
//!
//! Works directly on the density matrix: for a product measurement with
//! spinors `u` (qubit A) and `v` (qubit B) the measured state is diagonal in
//! the product basis with weights `p_kl = <u_k v_l| rho |u_k v_l>`, so its
//! purity is `sum p_kl^2`. No Bloch algebra is involved.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use thiserror::Error;

use crate::density::DensityMatrix4;
use crate::linalg::{self, Vec3};
use crate::measurement::{apply_measurement, MeasurementAxis};
use crate::measures::{Maximizer, MeasureResult, Method};

/// Points per tangent direction in each refinement round.
const REFINE_POINTS: usize = 9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("n_theta = {0} must be at least 8")]
    ThetaTooSmall(usize),
    #[error("n_phi = {0} must be at least 16")]
    PhiTooSmall(usize),
    #[error("refine_shrink = {0} must lie in [0.1, 0.9]")]
    BadShrink(f64),
}

/// Axis grid over measurement directions: polar angles `i pi / n_theta` for
/// `i = 0..=n_theta` and azimuths `pi j / n_phi` for `j < n_phi`. Since `n`
/// and `-n` give the same measurement, azimuths in `[0, pi)` already reach
/// every direction; the two poles coincide and appear once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n_theta: usize,
    pub n_phi: usize,
    pub refine_iters: usize,
    pub refine_shrink: f64,
}

impl GridSpec {
    pub fn new(
        n_theta: usize,
        n_phi: usize,
        refine_iters: usize,
        refine_shrink: f64,
    ) -> Result<Self, GridError> {
        if n_theta < 8 {
            return Err(GridError::ThetaTooSmall(n_theta));
        }
        if n_phi < 16 {
            return Err(GridError::PhiTooSmall(n_phi));
        }
        if !(0.1..=0.9).contains(&refine_shrink) {
            return Err(GridError::BadShrink(refine_shrink));
        }
        Ok(Self {
            n_theta,
            n_phi,
            refine_iters,
            refine_shrink,
        })
    }

    /// 64 x 128 base grid, 6 refinement rounds shrinking by 1/4.
    pub fn reference() -> Self {
        Self {
            n_theta: 64,
            n_phi: 128,
            refine_iters: 6,
            refine_shrink: 0.25,
        }
    }

    /// Same grid without refinement.
    pub fn base_only(&self) -> Self {
        Self {
            refine_iters: 0,
            ..*self
        }
    }

    /// Distinct measurement axes of the base grid, in enumeration order.
    pub fn axes(&self) -> Vec<Vec3> {
        let mut out = vec![[0.0, 0.0, 1.0]];
        for i in 1..self.n_theta {
            let theta = i as f64 * PI / self.n_theta as f64;
            for j in 0..self.n_phi {
                let phi = PI * j as f64 / self.n_phi as f64;
                out.push(MeasurementAxis::from_angles(theta, phi).vector());
            }
        }
        out
    }
}

/// Best value after the base grid and after each refinement round.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchTrace {
    pub result: MeasureResult,
    pub round_maxima: Vec<f64>,
}

/// Conditional blocks `M_k = <u_k| rho |u_k>` (2x2, acting on B) for both
/// outcomes of the A-side measurement along `a`.
#[derive(Debug, Clone, Copy)]
struct Blocks {
    m: [[[C64; 2]; 2]; 2],
}

fn orthogonal_spinor(u: &[C64; 2]) -> [C64; 2] {
    [-u[1].conj(), u[0].conj()]
}

fn blocks(rho: &DensityMatrix4, a: &Vec3) -> Blocks {
    let up = MeasurementAxis::normalized(*a).expect("unit axis").spinor();
    let spinors = [up, orthogonal_spinor(&up)];
    let mut m = [[[C64::new(0.0, 0.0); 2]; 2]; 2];
    for (k, u) in spinors.iter().enumerate() {
        for j in 0..2 {
            for l in 0..2 {
                let mut s = C64::new(0.0, 0.0);
                for i in 0..2 {
                    for ip in 0..2 {
                        s += u[i].conj() * rho.entry(2 * i + j, 2 * ip + l) * u[ip];
                    }
                }
                m[k][j][l] = s;
            }
        }
    }
    Blocks { m }
}

/// Real data needed to evaluate `<v|M|v>` quickly: `|v0|^2`, `|v1|^2`,
/// and `conj(v0) v1`.
#[derive(Debug, Clone, Copy)]
struct BWeights {
    s0: f64,
    s1: f64,
    w: C64,
}

fn b_weights(b: &Vec3) -> BWeights {
    let v = MeasurementAxis::normalized(*b).expect("unit axis").spinor();
    BWeights {
        s0: v[0].norm_sqr(),
        s1: v[1].norm_sqr(),
        w: v[0].conj() * v[1],
    }
}

/// `tr[(Pi_a (x) Pi_b)(rho)]^2`.
fn two_sided_purity(blk: &Blocks, bw: &BWeights) -> f64 {
    let mut total = 0.0;
    for m in &blk.m {
        let tr = m[0][0].re + m[1][1].re;
        let plus = bw.s0 * m[0][0].re + bw.s1 * m[1][1].re + 2.0 * (bw.w * m[0][1]).re;
        let minus = tr - plus;
        total += plus * plus + minus * minus;
    }
    total
}

/// `tr[(Pi_a (x) I)(rho)]^2 = sum_k tr(M_k^2)`.
fn one_sided_purity(blk: &Blocks) -> f64 {
    blk.m
        .iter()
        .map(|m| m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>())
        .sum()
}

/// Points `normalize(c + s e1 + t e2)` on a `REFINE_POINTS`^2 tangent grid
/// of half-width `h`, centre first.
fn local_patch(c: &Vec3, h: f64) -> Vec<Vec3> {
    let (e1, e2) = linalg::tangent_basis(c);
    let half = (REFINE_POINTS / 2) as isize;
    let step = h / half as f64;
    let mut out = vec![*c];
    for i in -half..=half {
        for j in -half..=half {
            if i == 0 && j == 0 {
                continue;
            }
            let (s, t) = (i as f64 * step, j as f64 * step);
            out.push(linalg::normalize3(&[
                c[0] + s * e1[0] + t * e2[0],
                c[1] + s * e1[1] + t * e2[1],
                c[2] + s * e1[2] + t * e2[2],
            ]));
        }
    }
    out
}

/// Index of the largest value, earliest on ties.
fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

fn axis(n: &Vec3) -> Option<MeasurementAxis> {
    MeasurementAxis::normalized(*n).ok()
}

/// Largest two-sided post-measurement purity over all axis pairs.
fn search_two_sided(rho: &DensityMatrix4, g: &GridSpec) -> (f64, Vec3, Vec3, Vec<f64>) {
    let axes = g.axes();
    let bws: Vec<BWeights> = axes.iter().map(b_weights).collect();
    let per_a: Vec<(f64, usize)> = axes
        .par_iter()
        .map(|a| {
            let blk = blocks(rho, a);
            let vals: Vec<f64> = bws.iter().map(|bw| two_sided_purity(&blk, bw)).collect();
            let j = argmax(&vals);
            (vals[j], j)
        })
        .collect();
    let i = argmax(&per_a.iter().map(|p| p.0).collect::<Vec<_>>());
    let (mut best, j) = per_a[i];
    let (mut a, mut b) = (axes[i], axes[j]);
    let mut rounds = vec![best];

    let mut h = PI / g.n_theta as f64;
    for _ in 0..g.refine_iters {
        let pa = local_patch(&a, h);
        let pb = local_patch(&b, h);
        let pbw: Vec<BWeights> = pb.iter().map(b_weights).collect();
        let per_a: Vec<(f64, usize)> = pa
            .par_iter()
            .map(|a| {
                let blk = blocks(rho, a);
                let vals: Vec<f64> = pbw.iter().map(|bw| two_sided_purity(&blk, bw)).collect();
                let j = argmax(&vals);
                (vals[j], j)
            })
            .collect();
        let i = argmax(&per_a.iter().map(|p| p.0).collect::<Vec<_>>());
        // The patch centres are the incumbent, so this never decreases.
        if per_a[i].0 > best {
            best = per_a[i].0;
            a = pa[i];
            b = pb[per_a[i].1];
        }
        rounds.push(best);
        h *= g.refine_shrink;
    }
    (best, a, b, rounds)
}

/// Largest A-side-only post-measurement purity.
fn search_one_sided(rho: &DensityMatrix4, g: &GridSpec) -> (f64, Vec3, Vec<f64>) {
    let axes = g.axes();
    let vals: Vec<f64> = axes
        .par_iter()
        .map(|a| one_sided_purity(&blocks(rho, a)))
        .collect();
    let i = argmax(&vals);
    let (mut best, mut a) = (vals[i], axes[i]);
    let mut rounds = vec![best];
    let mut h = PI / g.n_theta as f64;
    for _ in 0..g.refine_iters {
        let patch = local_patch(&a, h);
        let vals: Vec<f64> = patch
            .iter()
            .map(|p| one_sided_purity(&blocks(rho, p)))
            .collect();
        let i = argmax(&vals);
        if vals[i] > best {
            best = vals[i];
            a = patch[i];
        }
        rounds.push(best);
        h *= g.refine_shrink;
    }
    (best, a, rounds)
}

/// GGQD as `tr(rho^2) - max_{a,b} tr[(Pi_a (x) Pi_b)(rho)]^2` over the grid.
pub fn ggqd_bruteforce(rho: &DensityMatrix4, g: &GridSpec) -> MeasureResult {
    ggqd_bruteforce_traced(rho, g).result
}

pub fn ggqd_bruteforce_traced(rho: &DensityMatrix4, g: &GridSpec) -> SearchTrace {
    let (best, a, b, round_maxima) = search_two_sided(rho, g);
    let result = MeasureResult::new(
        rho.purity() - best,
        Method::BruteForce,
        Some(Maximizer {
            a: axis(&a),
            b: axis(&b),
        }),
    );
    SearchTrace {
        result,
        round_maxima,
    }
}

/// GD as `tr(rho^2) - max_a tr[(Pi_a (x) I)(rho)]^2` over the grid.
pub fn gd_bruteforce(rho: &DensityMatrix4, g: &GridSpec) -> MeasureResult {
    gd_bruteforce_traced(rho, g).result
}

pub fn gd_bruteforce_traced(rho: &DensityMatrix4, g: &GridSpec) -> SearchTrace {
    let (best, a, round_maxima) = search_one_sided(rho, g);
    let result = MeasureResult::new(
        rho.purity() - best,
        Method::BruteForce,
        Some(Maximizer {
            a: axis(&a),
            b: None,
        }),
    );
    SearchTrace {
        result,
        round_maxima,
    }
}

/// Sequential construction: first the A-side measurement `a*` that
/// maximizes the one-sided purity of `rho`, then, on `sigma = Pi_a*(rho)`,
/// the B-side measurement `b*` that maximizes the purity of `Pi_b*(sigma)`.
/// Returns `tr(rho^2) - tr[Pi_b*(sigma)]^2`.
pub fn tqc_sequential(rho: &DensityMatrix4, g: &GridSpec) -> MeasureResult {
    let (_, a_star, _) = search_one_sided(rho, g);
    let a_axis = axis(&a_star).expect("grid axes are unit");
    let sigma = apply_measurement(rho, Some(&a_axis), None).expect("one axis given");
    // Measuring B of sigma is measuring A of the swapped state.
    let (best, b_star, _) = search_one_sided(&sigma.swapped(), g);
    MeasureResult::new(
        rho.purity() - best,
        Method::TqcSequential,
        Some(Maximizer {
            a: Some(a_axis),
            b: axis(&b_star),
        }),
    )
}

//! Multi-start maximization of smooth functions on the unit sphere.
//!
//! Starts are a Fibonacci lattice. Each start is refined by coordinate ascent
//! in the tangent plane of the current point, one golden-section line search
//! per tangent direction, with the step retracted back onto the sphere.

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{self, Vec3};

const INITIAL_WINDOW: f64 = 0.25;
const WINDOW_GROWTH: f64 = 4.0;
const WINDOW_SHRINK: f64 = 0.125;
/// Golden-section brackets are resolved to this fraction of the window.
const LINE_SEARCH_RESOLUTION: f64 = 1e-3;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Number of Fibonacci-lattice starts.
    pub seeds: usize,
    /// Required agreement of the three best refined starts.
    pub tol: f64,
    /// Ascent stops once a full sweep moves less than this (radians).
    pub step_tol: f64,
    pub max_sweeps: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            seeds: 512,
            tol: 1e-9,
            step_tol: 1e-10,
            max_sweeps: 400,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("optimizer did not converge: best starts spread {spread:e} > tolerance {tol:e}")]
pub struct OptimizerDidNotConverge {
    pub spread: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMaximum {
    pub value: f64,
    pub argmax: Vec3,
    /// Best value minus the third-best refined value.
    pub spread: f64,
}

/// `n` nearly uniform points on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<Vec3> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = (golden_angle * i as f64).sin_cos();
            [r * c, r * s, z]
        })
        .collect()
}

fn retract(b: &Vec3, e: &Vec3, t: f64) -> Vec3 {
    linalg::normalize3(&[b[0] + t * e[0], b[1] + t * e[1], b[2] + t * e[2]])
}

/// Golden-section search for a maximum of `g` on `[lo, hi]`.
fn golden_max(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, resolution: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut g1 = g(x1);
    let mut g2 = g(x2);
    while hi - lo > resolution {
        if g1 >= g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - INV_PHI * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + INV_PHI * (hi - lo);
            g2 = g(x2);
        }
    }
    if g1 >= g2 {
        (x1, g1)
    } else {
        (x2, g2)
    }
}

/// Local ascent from `start`; returns the final value and point.
pub fn ascend<F: Fn(&Vec3) -> f64>(f: &F, start: &Vec3, cfg: &OptimizerConfig) -> (f64, Vec3) {
    let mut b = linalg::normalize3(start);
    let mut fb = f(&b);
    let mut window = INITIAL_WINDOW;
    for _ in 0..cfg.max_sweeps {
        let mut moved = 0.0f64;
        for dir in 0..2 {
            let (e1, e2) = linalg::tangent_basis(&b);
            let e = if dir == 0 { e1 } else { e2 };
            let (t, v) = golden_max(
                |t| f(&retract(&b, &e, t)),
                -window,
                window,
                window * LINE_SEARCH_RESOLUTION,
            );
            if v > fb {
                b = retract(&b, &e, t);
                fb = v;
                moved = moved.max(t.abs());
            }
        }
        if moved == 0.0 {
            // No gain anywhere in the bracket: the window may straddle a
            // neighbouring hill, so look closer before declaring convergence.
            if window <= cfg.step_tol {
                break;
            }
            window *= WINDOW_SHRINK;
            continue;
        }
        if moved < cfg.step_tol {
            break;
        }
        window = (WINDOW_GROWTH * moved).clamp(cfg.step_tol, INITIAL_WINDOW);
    }
    (fb, b)
}

/// Maximizes `f` over the unit sphere. The reduction is independent of
/// thread scheduling: starts are refined in parallel but ranked in lattice
/// order, ties going to the earlier start.
pub fn maximize<F>(f: &F, cfg: &OptimizerConfig) -> Result<SphereMaximum, OptimizerDidNotConverge>
where
    F: Fn(&Vec3) -> f64 + Sync,
{
    let starts = fibonacci_sphere(cfg.seeds.max(3));
    let refined: Vec<(f64, Vec3)> = starts.par_iter().map(|s| ascend(f, s, cfg)).collect();

    let mut best = 0;
    for (i, r) in refined.iter().enumerate() {
        if r.0 > refined[best].0 {
            best = i;
        }
    }
    let mut values: Vec<f64> = refined.iter().map(|r| r.0).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    let spread = values[0] - values[2];
    if !(spread <= cfg.tol) {
        return Err(OptimizerDidNotConverge {
            spread,
            tol: cfg.tol,
        });
    }
    Ok(SphereMaximum {
        value: refined[best].0,
        argmax: refined[best].1,
        spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_points_are_unit() {
        let pts = fibonacci_sphere(512);
        assert_eq!(pts.len(), 512);
        for p in &pts {
            assert!((linalg::norm_sqr3(p) - 1.0).abs() < 1e-14);
        }
        let mean_z: f64 = pts.iter().map(|p| p[2]).sum::<f64>() / 512.0;
        assert!(mean_z.abs() < 1e-12);
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (t, v) = golden_max(|t| -(t - 0.123).powi(2), -1.0, 1.0, 1e-12);
        assert!((t - 0.123).abs() < 1e-10);
        assert!(v.abs() < 1e-20);
    }

    #[test]
    fn maximizes_quadratic_form() {
        // n^t M n on the sphere peaks at the top eigenvalue.
        let m = [[0.3, 0.1, 0.0], [0.1, 0.5, 0.2], [0.0, 0.2, -0.4]];
        let f = |n: &Vec3| linalg::dot3(n, &linalg::mat3_vec(&m, n));
        let got = maximize(&f, &OptimizerConfig::default()).unwrap();
        let want = linalg::sym3_max_eigenvalue(&m);
        assert!(
            (got.value - want).abs() < 1e-12,
            "{} vs {}",
            got.value,
            want
        );
        assert!(got.spread <= 1e-9);
    }

    #[test]
    fn handles_maximum_at_pole() {
        let f = |n: &Vec3| n[2] - 0.1 * n[0] * n[0];
        let got = maximize(&f, &OptimizerConfig::default()).unwrap();
        assert!((got.value - 1.0).abs() < 1e-12);
        assert!((got.argmax[2] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn reports_spread_failure() {
        // Without any ascent the three lattice starts sit at z = 2/3, 0, -2/3.
        let f = |n: &Vec3| n[2];
        let cfg = OptimizerConfig {
            seeds: 3,
            max_sweeps: 0,
            ..OptimizerConfig::default()
        };
        let err = maximize(&f, &cfg).unwrap_err();
        assert!((err.spread - 4.0 / 3.0).abs() < 1e-12);
    }
}

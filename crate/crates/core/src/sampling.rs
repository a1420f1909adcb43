//! Seeded random states for verification runs.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::density::DensityMatrix4;
use crate::linalg;
use crate::measures::XStateParams;

/// Flat Dirichlet draw via sorted-uniform spacings.
pub fn random_populations<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    let mut u: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
    u.sort_by(f64::total_cmp);
    [u[0], u[1] - u[0], u[2] - u[1], 1.0 - u[2]]
}

/// Populations from [`random_populations`], antidiagonal moduli uniform on
/// their allowed intervals, phases uniform on `[0, 2 pi)`.
pub fn random_x_params<R: Rng + ?Sized>(rng: &mut R) -> XStateParams {
    let d = random_populations(rng);
    let m03 = rng.gen::<f64>() * (d[0] * d[3]).sqrt();
    let m12 = rng.gen::<f64>() * (d[1] * d[2]).sqrt();
    let a03 = C64::from_polar(m03, 2.0 * PI * rng.gen::<f64>());
    let a12 = C64::from_polar(m12, 2.0 * PI * rng.gen::<f64>());
    XStateParams::new(d, a03, a12).expect("sampled inside the X-state region")
}

/// Like [`random_x_params`] with real nonnegative antidiagonals.
pub fn random_real_x_params<R: Rng + ?Sized>(rng: &mut R) -> XStateParams {
    let d = random_populations(rng);
    let m03 = rng.gen::<f64>() * (d[0] * d[3]).sqrt();
    let m12 = rng.gen::<f64>() * (d[1] * d[2]).sqrt();
    XStateParams::real(d, m03, m12).expect("sampled inside the X-state region")
}

/// `G G^dagger / tr(G G^dagger)` for a 4x4 complex Ginibre matrix `G`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix4 {
    let mut g = linalg::zeros4();
    for row in g.iter_mut() {
        for z in row.iter_mut() {
            *z = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
    }
    let m = linalg::mul4(&g, &linalg::adjoint4(&g));
    let tr = linalg::trace4(&m).re;
    DensityMatrix4::new(linalg::scale4(&m, 1.0 / tr)).expect("Ginibre states are valid")
}

/// Haar-like random local unitary `U_A (x) U_B` from normalized Gaussian
/// quaternions.
pub fn random_local_unitary<R: Rng + ?Sized>(rng: &mut R) -> linalg::Mat4 {
    let mut su2 = || {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        let (a, b) = (C64::new(q[0] / n, q[1] / n), C64::new(q[2] / n, q[3] / n));
        [[a, -b.conj()], [b, a.conj()]]
    };
    let ua = su2();
    let ub = su2();
    linalg::kron2(&ua, &ub)
}

//! Fixed-size dense linear algebra for two-qubit work: 4x4 complex matrices,
//! 3-vectors and 3x3 real symmetric eigenproblems.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

pub type Mat4 = [[C64; 4]; 4];
pub type Mat2 = [[C64; 2]; 2];
pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
/// Normalized cubic discriminant below which the trigonometric 3x3 solver
/// hands over to Jacobi iteration.
pub const CUBIC_DISCRIMINANT_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

pub fn zeros4() -> Mat4 {
    [[ZERO; 4]; 4]
}

pub fn identity4() -> Mat4 {
    let mut m = zeros4();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn mul4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = zeros4();
    for i in 0..4 {
        for k in 0..4 {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..4 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint4(a: &Mat4) -> Mat4 {
    let mut out = zeros4();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub fn add4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = *a;
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] += b[i][j];
        }
    }
    out
}

pub fn scale4(a: &Mat4, s: f64) -> Mat4 {
    let mut out = *a;
    for row in out.iter_mut() {
        for z in row.iter_mut() {
            *z *= s;
        }
    }
    out
}

pub fn trace4(a: &Mat4) -> C64 {
    (0..4).map(|i| a[i][i]).sum()
}

/// `U A U†`.
pub fn conjugate4(u: &Mat4, a: &Mat4) -> Mat4 {
    mul4(&mul4(u, a), &adjoint4(u))
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff4(a: &Mat4, b: &Mat4) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

/// Kronecker product of two 2x2 matrices, first factor acting on qubit A
/// (the more significant index of the computational basis).
pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = zeros4();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Pauli matrices indexed 0..=3 with `sigma(0)` the identity.
pub fn sigma(index: usize) -> Mat2 {
    let i = C64::new(0.0, 1.0);
    match index {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -i], [i, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("Pauli index out of range: {index}"),
    }
}

/// Eigenvalues of a Hermitian 4x4 matrix by cyclic complex Jacobi rotations,
/// sorted ascending. Only the Hermitian part of `m` is used.
pub fn hermitian_eigenvalues4(m: &Mat4) -> [f64; 4] {
    let mut a = *m;
    for i in 0..4 {
        for j in i..4 {
            let h = 0.5 * (a[i][j] + a[j][i].conj());
            a[i][j] = h;
            a[j][i] = h.conj();
        }
        a[i][i].im = 0.0;
    }

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off < JACOBI_OFF_TOL {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let r = a[p][q].norm();
                if r < 1e-300 {
                    continue;
                }
                // Phase the (p,q) element real, then apply a real Jacobi rotation.
                let phase = a[p][q] / r;
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Unitary acting on the (p, q) plane: columns u_p, u_q.
                let mut u = identity4();
                u[p][p] = C64::new(c, 0.0);
                u[p][q] = C64::new(s, 0.0);
                u[q][p] = -phase.conj() * s;
                u[q][q] = phase.conj() * c;
                a = mul4(&mul4(&adjoint4(&u), &a), &u);
                a[p][q] = ZERO;
                a[q][p] = ZERO;
            }
        }
    }
    let mut ev = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

pub fn dot3(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm_sqr3(a: &Vec3) -> f64 {
    dot3(a, a)
}

pub fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn normalize3(a: &Vec3) -> Vec3 {
    let n = norm_sqr3(a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

pub fn mat3_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [dot3(&m[0], v), dot3(&m[1], v), dot3(&m[2], v)]
}

pub fn mat3_transpose(m: &Mat3) -> Mat3 {
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = m[j][i];
        }
    }
    t
}

pub fn frobenius_sqr3(m: &Mat3) -> f64 {
    m.iter().flatten().map(|v| v * v).sum()
}

pub fn outer3(a: &Vec3, b: &Vec3) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = a[i] * b[j];
        }
    }
    m
}

/// Two unit vectors spanning the plane orthogonal to unit vector `n`.
pub fn tangent_basis(n: &Vec3) -> (Vec3, Vec3) {
    let helper = if n[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = normalize3(&cross3(n, &helper));
    let e2 = cross3(n, &e1);
    (e1, e2)
}

/// Eigenvalues of a real symmetric 3x3 matrix, descending.
///
/// Uses the trigonometric solution of the characteristic cubic. When the
/// normalized discriminant `1 - r^2` of the shifted cubic `l^3 - 3l - 2r`
/// is within [`CUBIC_DISCRIMINANT_TOL`] of zero (a repeated root) the
/// Jacobi solver is used instead.
pub fn sym3_eigenvalues(m: &Mat3) -> [f64; 3] {
    let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    if p1 == 0.0 {
        let mut ev = [m[0][0], m[1][1], m[2][2]];
        ev.sort_by(|a, b| b.total_cmp(a));
        return ev;
    }
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = *m;
    for (i, row) in b.iter_mut().enumerate() {
        row[i] -= q;
        for v in row.iter_mut() {
            *v /= p;
        }
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det / 2.0).clamp(-1.0, 1.0);
    if 1.0 - r * r < CUBIC_DISCRIMINANT_TOL {
        return sym3_jacobi(m).0;
    }
    let phi = r.acos() / 3.0;
    let l1 = q + 2.0 * p * phi.cos();
    let l3 = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let l2 = 3.0 * q - l1 - l3;
    [l1, l2, l3]
}

pub fn sym3_max_eigenvalue(m: &Mat3) -> f64 {
    sym3_eigenvalues(m)[0]
}

/// Jacobi diagonalization of a real symmetric 3x3 matrix. Returns the
/// eigenvalues in descending order and the matching unit eigenvectors.
pub fn sym3_jacobi(m: &Mat3) -> ([f64; 3], [Vec3; 3]) {
    let mut a = *m;
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]).sqrt();
        if off < JACOBI_OFF_TOL * (1.0 + a[0][0].abs() + a[1][1].abs() + a[2][2].abs()) {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            for row in v.iter_mut() {
                let vkp = row[p];
                let vkq = row[q];
                row[p] = c * vkp - s * vkq;
                row[q] = s * vkp + c * vkq;
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = [
        a[order[0]][order[0]],
        a[order[1]][order[1]],
        a[order[2]][order[2]],
    ];
    let vectors = order.map(|c| [v[0][c], v[1][c], v[2][c]]);
    (values, vectors)
}

/// Unit eigenvector of the largest eigenvalue of a symmetric 3x3 matrix.
pub fn sym3_top_eigenvector(m: &Mat3) -> Vec3 {
    sym3_jacobi(m).1[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation(angle_x: f64, angle_z: f64) -> Mat3 {
        let (sx, cx) = angle_x.sin_cos();
        let (sz, cz) = angle_z.sin_cos();
        let rx = [[1.0, 0.0, 0.0], [0.0, cx, -sx], [0.0, sx, cx]];
        let rz = [[cz, -sz, 0.0], [sz, cz, 0.0], [0.0, 0.0, 1.0]];
        mul3(&rz, &rx)
    }

    fn mul3(a: &Mat3, b: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    }

    fn with_spectrum(ev: [f64; 3], r: &Mat3) -> Mat3 {
        let d = [[ev[0], 0.0, 0.0], [0.0, ev[1], 0.0], [0.0, 0.0, ev[2]]];
        mul3(&mul3(r, &d), &mat3_transpose(r))
    }

    #[test]
    fn trig_solver_recovers_known_spectrum() {
        let m = with_spectrum([0.7, -0.2, 0.1], &rotation(0.3, 1.1));
        let ev = sym3_eigenvalues(&m);
        for (got, want) in ev.iter().zip([0.7, 0.1, -0.2]) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn degenerate_spectrum_uses_fallback() {
        let m = with_spectrum([0.5, 0.5, 0.1], &rotation(0.9, -0.4));
        let ev = sym3_eigenvalues(&m);
        assert!((ev[0] - 0.5).abs() < 1e-13);
        assert!((ev[1] - 0.5).abs() < 1e-13);
        assert!((ev[2] - 0.1).abs() < 1e-13);
        let triple = [[0.3, 0.0, 0.0], [0.0, 0.3, 0.0], [0.0, 0.0, 0.3]];
        assert_eq!(sym3_eigenvalues(&triple), [0.3, 0.3, 0.3]);
    }

    #[test]
    fn jacobi_vectors_are_eigenvectors() {
        let m = with_spectrum([1.3, 0.2, -0.6], &rotation(-0.7, 2.0));
        let (vals, vecs) = sym3_jacobi(&m);
        for (l, v) in vals.iter().zip(vecs.iter()) {
            let mv = mat3_vec(&m, v);
            for k in 0..3 {
                assert!((mv[k] - l * v[k]).abs() < 1e-12);
            }
        }
        assert!((vals[0] - 1.3).abs() < 1e-12);
    }

    #[test]
    fn hermitian_jacobi_on_complex_matrix() {
        // Hermitian matrix with spectrum {0.1, 0.2, 0.3, 0.4} built as U D U†.
        let h = C64::new(0.5f64.sqrt(), 0.0);
        let ih = C64::new(0.0, 0.5f64.sqrt());
        let u2: Mat2 = [[h, ih], [ih, h]];
        let u = kron2(&u2, &u2);
        let mut d = zeros4();
        for (i, v) in [0.1, 0.2, 0.3, 0.4].iter().enumerate() {
            d[i][i] = C64::new(*v, 0.0);
        }
        let m = conjugate4(&u, &d);
        let ev = hermitian_eigenvalues4(&m);
        for (got, want) in ev.iter().zip([0.1, 0.2, 0.3, 0.4]) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
    }

    #[test]
    fn tangent_basis_is_orthonormal() {
        for n in [
            [0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0],
            normalize3(&[0.3, -0.4, 0.2]),
        ] {
            let (e1, e2) = tangent_basis(&n);
            assert!(dot3(&e1, &n).abs() < 1e-15);
            assert!(dot3(&e2, &n).abs() < 1e-15);
            assert!(dot3(&e1, &e2).abs() < 1e-15);
            assert!((norm_sqr3(&e1) - 1.0).abs() < 1e-15);
            assert!((norm_sqr3(&e2) - 1.0).abs() < 1e-15);
        }
    }
}

//! Numerical tolerances shared across the crate.

/// Hermiticity: `|m_ij - conj(m_ji)|`.
pub const HERMITIAN: f64 = 1e-12;
/// Unit trace: `|tr m - 1|`.
pub const TRACE: f64 = 1e-12;
/// Smallest admissible eigenvalue is `-PSD`.
pub const PSD: f64 = 1e-10;
/// Purity identity `(1 + |x|^2 + |y|^2 + |T|^2)/4 = tr(rho^2)`.
pub const BLOCH: f64 = 1e-10;
/// Largest imaginary residue tolerated in a Pauli expectation value.
pub const BLOCH_IMAG: f64 = 1e-12;
/// Unit norm of a measurement axis.
pub const AXIS_NORM: f64 = 1e-12;
/// Probability normalization of X-state diagonals and amplitude sets.
pub const NORMALIZATION: f64 = 1e-12;
/// Slack on the 2x2 block positivity bounds of X-state antidiagonals.
pub const X_BLOCK: f64 = 1e-12;
/// Imaginary part above which an antidiagonal counts as complex.
pub const COMPLEX_INPUT: f64 = 1e-12;
/// Measure values in `[-CLAMP, 0)` are round-off and clamp to zero.
pub const CLAMP: f64 = 1e-10;
/// Agreement required between TQC and the brute-force GGQD.
pub const TQC_IDENTITY: f64 = 2e-6;

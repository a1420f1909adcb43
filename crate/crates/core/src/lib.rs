//! Geometric discord and geometric global quantum discord of two-qubit
//! states: closed forms for X states, sphere optimization for general
//! states, and a brute-force measurement oracle that checks both.

pub mod bloch;
pub mod density;
pub mod linalg;
pub mod measurement;
pub mod measures;
pub mod oracle;
pub mod sampling;
pub mod sphere;
pub mod states;
pub mod tol;

pub use bloch::{bloch_decompose, reconstruct, BlochError, BlochForm};
pub use density::{purity, validate_density, DensityError, DensityMatrix4, Violation};
pub use measurement::{apply_measurement, MeasurementAxis, MeasurementError};
pub use measures::{
    classify_x_case, gap_x, gd_dakic, gd_x, ggqd_general, ggqd_matrix_form, ggqd_x, CaseTag,
    Maximizer, Measure, MeasureError, MeasureResult, Method, XCase, XStateError, XStateParams,
};
pub use oracle::{gd_bruteforce, ggqd_bruteforce, tqc_sequential, GridError, GridSpec};
pub use sphere::{OptimizerConfig, OptimizerDidNotConverge};
pub use states::{
    example1, example2, example3, example4, example5, example_reference, normalize_x_phases,
    reservoir_amplitudes, tc_amplitudes, x_state, PhaseNormalization, ReferenceExample,
    ReservoirAmplitudes, StatesError, TCAmplitudes,
};

pub use num_complex::Complex64;

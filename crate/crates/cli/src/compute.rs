use std::fmt::Write as _;

use clap::ValueEnum;
use geodiscord::{
    classify_x_case, gd_bruteforce, gd_dakic, gd_x, ggqd_bruteforce, ggqd_general, ggqd_x,
    normalize_x_phases, x_state, Complex64, DensityMatrix4, GridSpec, MeasureResult,
    OptimizerConfig, XStateParams,
};

use crate::error::CliError;
use crate::input::StateInput;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureFlag {
    Gd,
    Ggqd,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodFlag {
    /// Closed forms (X states); Bloch eigenvalue and sphere search otherwise.
    Analytic,
    /// Bloch eigenvalue for GD, sphere search for GGQD.
    Numeric,
    /// Grid search over measurement axes.
    Brute,
}

/// Entries off the diagonal and antidiagonal at most this large count as zero
/// when deciding whether a DM4 input is an X state.
const X_PATTERN_TOL: f64 = 1e-12;

/// Reads the X-state parameters back out of a matrix with X shape.
pub fn as_x_state(rho: &DensityMatrix4) -> Option<XStateParams> {
    for i in 0..4 {
        for j in 0..4 {
            if i != j && i + j != 3 && rho.entry(i, j).norm() > X_PATTERN_TOL {
                return None;
            }
        }
    }
    let d = [0, 1, 2, 3].map(|i| rho.entry(i, i).re);
    XStateParams::new(d, rho.entry(0, 3), rho.entry(1, 2)).ok()
}

fn fmt_axis(n: Option<&geodiscord::MeasurementAxis>) -> String {
    match n {
        Some(a) => {
            let v = a.vector();
            format!("({:.9}, {:.9}, {:.9})", v[0], v[1], v[2])
        }
        None => "-".to_string(),
    }
}

fn line(out: &mut String, name: &str, r: &MeasureResult) {
    let _ = write!(out, "{name} = {:?} [{}]", r.value, r.method);
    if let Some(m) = &r.maximizer {
        let _ = write!(
            out,
            " a={} b={}",
            fmt_axis(m.a.as_ref()),
            fmt_axis(m.b.as_ref())
        );
    }
    if r.clamped {
        out.push_str(" (clamped)");
    }
    out.push('\n');
}

fn complex(z: Complex64) -> String {
    format!("{:?}{:+?}i", z.re, z.im)
}

/// Text report for one state.
pub fn compute_report(
    input: &StateInput,
    measure: MeasureFlag,
    method: MethodFlag,
) -> Result<String, CliError> {
    let fail = |e: geodiscord::MeasureError| CliError::Validation(e.to_string());
    let (rho, x) = match input {
        StateInput::Dm4(rho) => (*rho, as_x_state(rho)),
        StateInput::X(p) => {
            let rho = x_state(p).map_err(|e| CliError::Validation(e.to_string()))?;
            (rho, Some(*p))
        }
    };
    let mut out = String::new();
    let normalized = x.map(|p| normalize_x_phases(&p));
    match (&x, &normalized) {
        (Some(p), Some(n)) => {
            let _ = writeln!(
                out,
                "state: X d=({:?}, {:?}, {:?}, {:?}) rho_03={} rho_12={}",
                p.d[0],
                p.d[1],
                p.d[2],
                p.d[3],
                complex(p.a03),
                complex(p.a12)
            );
            if n.theta1 != 0.0 || n.theta2 != 0.0 {
                let _ = writeln!(out, "phases: theta1={:?} theta2={:?}", n.theta1, n.theta2);
            }
            let c = classify_x_case(&n.normalized).map_err(fail)?;
            let _ = writeln!(
                out,
                "case: {:?} lhs={:?} mid={:?} rhs={:?}",
                c.tag, c.lhs, c.mid, c.rhs
            );
        }
        _ => {
            let _ = writeln!(out, "state: general two-qubit (purity {:?})", rho.purity());
        }
    }

    let opt = OptimizerConfig::default();
    let grid = GridSpec::reference();
    let closed = normalized
        .filter(|_| method == MethodFlag::Analytic)
        .map(|n| n.normalized);
    if matches!(measure, MeasureFlag::Gd | MeasureFlag::Both) {
        let r = match (method, &closed) {
            (MethodFlag::Brute, _) => gd_bruteforce(&rho, &grid),
            (_, Some(p)) => gd_x(p).map_err(fail)?,
            _ => gd_dakic(&rho).map_err(fail)?,
        };
        line(&mut out, "gd", &r);
    }
    if matches!(measure, MeasureFlag::Ggqd | MeasureFlag::Both) {
        let r = match (method, &closed) {
            (MethodFlag::Brute, _) => ggqd_bruteforce(&rho, &grid),
            (_, Some(p)) => ggqd_x(p).map_err(fail)?,
            _ => ggqd_general(&rho, &opt).map_err(fail)?,
        };
        line(&mut out, "ggqd", &r);
    }
    Ok(out)
}

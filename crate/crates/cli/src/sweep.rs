use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;
use geodiscord::states::tau_to_gt;
use geodiscord::{
    example1, example2, example3, example4, example5, gd_x, ggqd_x, Method, StatesError,
    XStateParams,
};
use rayon::prelude::*;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Ex1,
    Ex2,
    Ex3,
    /// Two atoms in a cavity; parameter is tau = sqrt(6) g t / (2 pi).
    Ex4,
    /// Two atoms in a common reservoir; parameter is gamma t.
    Ex5,
}

/// `start:end:steps`, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl FromStr for SweepRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range '{s}' must look like start:end:steps"));
        }
        let num = |t: &str| match t.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(format!("'{t}' in range '{s}' is not a finite number")),
        };
        let steps = parts[2].trim().parse::<usize>().map_err(|_| {
            format!(
                "step count '{}' in range '{s}' is not a whole number",
                parts[2]
            )
        })?;
        if steps < 2 {
            return Err(format!("range '{s}' needs at least 2 steps"));
        }
        Ok(Self {
            start: num(parts[0])?,
            end: num(parts[1])?,
            steps,
        })
    }
}

impl SweepRange {
    /// Grid values, exact at both endpoints.
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..self.steps)
            .map(|i| (self.start * (n - i) as f64 + self.end * i as f64) / n as f64)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub param: f64,
    pub gd: f64,
    pub ggqd: f64,
    pub method_gd: Method,
    pub method_ggqd: Method,
}

pub const DEFAULT_ALPHA_EX4: f64 = std::f64::consts::FRAC_1_SQRT_2;
pub const DEFAULT_ALPHA_EX5: f64 = 0.1;

type Family = Box<dyn Fn(f64) -> Result<XStateParams, StatesError> + Sync>;

fn family(example: Example, alpha: Option<f64>) -> Result<Family, CliError> {
    if alpha.is_some() && !matches!(example, Example::Ex4 | Example::Ex5) {
        return Err(CliError::Usage(
            "--alpha applies only to ex4 and ex5".into(),
        ));
    }
    Ok(match example {
        Example::Ex1 => Box::new(example1),
        Example::Ex2 => Box::new(example2),
        Example::Ex3 => Box::new(example3),
        Example::Ex4 => {
            let a = alpha.unwrap_or(DEFAULT_ALPHA_EX4);
            if !(0.0..=1.0).contains(&a) {
                return Err(CliError::Usage(format!(
                    "--alpha must lie in [0, 1], got {a}"
                )));
            }
            let b = (1.0 - a * a).sqrt();
            Box::new(move |tau| example4(a, b, tau_to_gt(tau)))
        }
        Example::Ex5 => {
            let a = alpha.unwrap_or(DEFAULT_ALPHA_EX5);
            Box::new(move |gt| example5(a, gt))
        }
    })
}

/// Analytic D and D^G along one example family.
pub fn run_sweep(
    example: Example,
    range: &SweepRange,
    alpha: Option<f64>,
) -> Result<Vec<SweepRecord>, CliError> {
    let f = family(example, alpha)?;
    range
        .points()
        .par_iter()
        .map(|&param| {
            let p = f(param).map_err(|e| CliError::Usage(format!("parameter {param}: {e}")))?;
            let gd = gd_x(&p).map_err(|e| CliError::Validation(e.to_string()))?;
            let ggqd = ggqd_x(&p).map_err(|e| CliError::Validation(e.to_string()))?;
            Ok(SweepRecord {
                param,
                gd: gd.value,
                ggqd: ggqd.value,
                method_gd: gd.method,
                method_ggqd: ggqd.method,
            })
        })
        .collect()
}

/// Shortest decimal that reads back to the same double.
pub fn fmt_num(v: f64) -> String {
    format!("{v:?}")
}

pub fn to_csv(records: &[SweepRecord]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["param", "gd", "ggqd"])
        .expect("writing to memory");
    for r in records {
        w.write_record([fmt_num(r.param), fmt_num(r.gd), fmt_num(r.ggqd)])
            .expect("writing to memory");
    }
    w.into_inner().expect("writing to memory")
}

pub fn write_csv(path: &Path, records: &[SweepRecord]) -> Result<(), CliError> {
    std::fs::write(path, to_csv(records)).map_err(|source| CliError::Unwritable {
        path: path.to_path_buf(),
        source,
    })
}

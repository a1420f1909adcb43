use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use geodiscord::sampling::{random_density, random_x_params};
use geodiscord::{
    gap_x, gd_bruteforce, gd_dakic, gd_x, ggqd_bruteforce, ggqd_general, ggqd_matrix_form, ggqd_x,
    normalize_x_phases, tqc_sequential, x_state, DensityMatrix4, GridSpec, OptimizerConfig,
    XStateParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::CliError;

/// Fixed bounds for the checks that do not follow `--tol`.
pub const GAP_TOL: f64 = 1e-12;
pub const TQC_TOL: f64 = 2e-6;
pub const CROSS_TOL: f64 = 1e-8;
/// Differences below this count as zero in the general-state statistics.
pub const SIGN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
    pub grid: GridSpec,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(
        seed: u64,
        trials: usize,
        tolerance: f64,
        grid: GridSpec,
        output_path: Option<PathBuf>,
    ) -> Result<Self, CliError> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tol must be positive, got {tolerance}"
            )));
        }
        if trials == 0 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        Ok(Self {
            seed,
            trials,
            tolerance,
            grid,
            output_path,
        })
    }
}

/// `--grid n_theta:n_phi:refine_iters:refine_shrink`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArg(pub GridSpec);

impl FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("grid '{s}' must look like n_theta:n_phi:refine_iters:refine_shrink");
        if parts.len() != 4 {
            return Err(bad());
        }
        let count = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let shrink = parts[3].trim().parse::<f64>().map_err(|_| bad())?;
        GridSpec::new(count(parts[0])?, count(parts[1])?, count(parts[2])?, shrink)
            .map(GridArg)
            .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CheckStat {
    pub passed: usize,
    pub total: usize,
    pub worst: f64,
}

impl CheckStat {
    fn record(&mut self, deviation: f64, ok: bool) {
        self.total += 1;
        if ok {
            self.passed += 1;
        }
        if !(deviation <= self.worst) {
            self.worst = deviation;
        }
    }

    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    /// (a) closed forms against the grid search, both measures.
    pub analytic_vs_brute: CheckStat,
    /// (b) `D^G - D >= 0` on X states; `worst` is the most negative gap's size.
    pub lower_bound: CheckStat,
    /// (c) sequential TQC against the joint grid search.
    pub tqc_identity: CheckStat,
    /// (d) per-case gap formulas against direct subtraction.
    pub case_gaps: CheckStat,
    /// (e) sphere search against the matrix form on general states.
    pub optimizer_cross: CheckStat,
    /// Sign counts of `D^G - D` on general states: (positive, zero, negative).
    pub general_signs: (usize, usize, usize),
    pub general_min_gap: f64,
    /// One line per failing state.
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn describe_x(p: &XStateParams) -> String {
    format!(
        "d=({:?}, {:?}, {:?}, {:?}) rho_03=({:?}, {:?}) rho_12=({:?}, {:?})",
        p.d[0], p.d[1], p.d[2], p.d[3], p.a03.re, p.a03.im, p.a12.re, p.a12.im
    )
}

struct XOutcome {
    brute_dev: f64,
    gap: f64,
    tqc_dev: f64,
    gap_formula_dev: f64,
}

fn evaluate_x(p: &XStateParams, grid: &GridSpec) -> Result<XOutcome, String> {
    let n = normalize_x_phases(p).normalized;
    let rho = x_state(p).map_err(|e| e.to_string())?;
    let gd = gd_x(&n).map_err(|e| e.to_string())?.value;
    let ggqd = ggqd_x(&n).map_err(|e| e.to_string())?.value;
    let gd_b = gd_bruteforce(&rho, grid).value;
    let ggqd_b = ggqd_bruteforce(&rho, grid).value;
    let tqc = tqc_sequential(&rho, grid).value;
    let gap = gap_x(&n).map_err(|e| e.to_string())?;
    Ok(XOutcome {
        brute_dev: (gd_b - gd).abs().max((ggqd_b - ggqd).abs()),
        gap: ggqd - gd,
        tqc_dev: (tqc - ggqd_b).abs(),
        gap_formula_dev: (gap - (ggqd - gd)).abs(),
    })
}

/// Runs every check on the given states.
pub fn verify_states(
    x_states: &[XStateParams],
    general: &[DensityMatrix4],
    cfg: &RunConfig,
) -> VerifyReport {
    let mut report = VerifyReport {
        general_min_gap: f64::INFINITY,
        ..Default::default()
    };
    let outcomes: Vec<_> = x_states
        .par_iter()
        .map(|p| evaluate_x(p, &cfg.grid))
        .collect();
    for (i, (p, o)) in x_states.iter().zip(outcomes).enumerate() {
        let o = match o {
            Ok(o) => o,
            Err(e) => {
                report
                    .failures
                    .push(format!("x[{i}] {}: evaluation failed: {e}", describe_x(p)));
                continue;
            }
        };
        let mut fail = Vec::new();
        let ok = o.brute_dev <= cfg.tolerance;
        report.analytic_vs_brute.record(o.brute_dev, ok);
        if !ok {
            fail.push(format!("(a) |analytic - brute| = {:.3e}", o.brute_dev));
        }
        let ok = o.gap >= -GAP_TOL;
        report.lower_bound.record((-o.gap).max(0.0), ok);
        if !ok {
            fail.push(format!("(b) D^G - D = {:.3e}", o.gap));
        }
        let ok = o.tqc_dev <= TQC_TOL;
        report.tqc_identity.record(o.tqc_dev, ok);
        if !ok {
            fail.push(format!("(c) |tqc - brute D^G| = {:.3e}", o.tqc_dev));
        }
        let ok = o.gap_formula_dev <= GAP_TOL;
        report.case_gaps.record(o.gap_formula_dev, ok);
        if !ok {
            fail.push(format!(
                "(d) |gap formula - direct| = {:.3e}",
                o.gap_formula_dev
            ));
        }
        if !fail.is_empty() {
            report
                .failures
                .push(format!("x[{i}] {}: {}", describe_x(p), fail.join("; ")));
        }
    }

    let opt = OptimizerConfig::default();
    let general_out: Vec<_> = general
        .par_iter()
        .map(|rho| {
            let g = ggqd_general(rho, &opt).map_err(|e| e.to_string())?.value;
            let m = ggqd_matrix_form(rho, &opt)
                .map_err(|e| e.to_string())?
                .value;
            let d = gd_dakic(rho).map_err(|e| e.to_string())?.value;
            Ok::<_, String>((g, m, d))
        })
        .collect();
    for (i, (rho, o)) in general.iter().zip(general_out).enumerate() {
        match o {
            Ok((g, m, d)) => {
                let dev = (g - m).abs();
                let ok = dev <= CROSS_TOL;
                report.optimizer_cross.record(dev, ok);
                if !ok {
                    report.failures.push(format!(
                        "general[{i}] purity {:?}: (e) |sphere - matrix form| = {dev:.3e}",
                        rho.purity()
                    ));
                }
                let gap = g - d;
                report.general_min_gap = report.general_min_gap.min(gap);
                match gap {
                    x if x > SIGN_TOL => report.general_signs.0 += 1,
                    x if x < -SIGN_TOL => report.general_signs.2 += 1,
                    _ => report.general_signs.1 += 1,
                }
            }
            Err(e) => {
                report.optimizer_cross.record(f64::INFINITY, false);
                report.failures.push(format!("general[{i}]: {e}"));
            }
        }
    }
    report
}

/// Draws `trials` X states, then `trials` general states, from one seeded
/// stream.
pub fn sample_states(seed: u64, trials: usize) -> (Vec<XStateParams>, Vec<DensityMatrix4>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = (0..trials).map(|_| random_x_params(&mut rng)).collect();
    let gs = (0..trials).map(|_| random_density(&mut rng)).collect();
    (xs, gs)
}

pub fn run_verify(cfg: &RunConfig) -> VerifyReport {
    let (xs, gs) = sample_states(cfg.seed, cfg.trials);
    verify_states(&xs, &gs, cfg)
}

fn stat_line(out: &mut String, label: &str, s: &CheckStat) {
    let verdict = if s.all_pass() { "ok" } else { "FAIL" };
    let _ = writeln!(
        out,
        "{label}: {}/{} pass, worst {:.3e} [{verdict}]",
        s.passed, s.total, s.worst
    );
}

pub fn format_report(cfg: &RunConfig, r: &VerifyReport) -> String {
    let mut out = String::new();
    let g = &cfg.grid;
    let _ = writeln!(
        out,
        "verify: seed {} trials {} tol {:e} grid {}x{} refine {}x{}",
        cfg.seed, cfg.trials, cfg.tolerance, g.n_theta, g.n_phi, g.refine_iters, g.refine_shrink
    );
    stat_line(
        &mut out,
        "(a) analytic vs brute force",
        &r.analytic_vs_brute,
    );
    stat_line(&mut out, "(b) ggqd >= gd on X states", &r.lower_bound);
    stat_line(
        &mut out,
        "(c) tqc_sequential vs ggqd_bruteforce",
        &r.tqc_identity,
    );
    stat_line(&mut out, "(d) case gap formulas", &r.case_gaps);
    stat_line(
        &mut out,
        "(e) sphere search vs matrix form",
        &r.optimizer_cross,
    );
    let (pos, zero, neg) = r.general_signs;
    let _ = writeln!(
        out,
        "general states ggqd - gd: {pos} positive, {zero} zero, {neg} negative, min {:.3e} (not asserted)",
        r.general_min_gap
    );
    if r.passed() {
        out.push_str("result: PASS\n");
    } else {
        let _ = writeln!(out, "failing states ({}):", r.failures.len());
        for f in &r.failures {
            let _ = writeln!(out, "  {f}");
        }
        out.push_str("result: FAIL\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig::new(1, 1, 1e-4, GridSpec::new(16, 32, 4, 0.25).unwrap(), None).unwrap()
    }

    #[test]
    fn config_validation() {
        let g = GridSpec::reference();
        assert!(RunConfig::new(1, 0, 1e-4, g, None).is_err());
        assert!(RunConfig::new(1, 1, 0.0, g, None).is_err());
        assert!(RunConfig::new(1, 1, f64::NAN, g, None).is_err());
    }

    #[test]
    fn grid_argument() {
        let g: GridArg = "16:32:2:0.5".parse().unwrap();
        assert_eq!(g.0, GridSpec::new(16, 32, 2, 0.5).unwrap());
        assert!("16:32:2".parse::<GridArg>().is_err());
        assert!("4:32:2:0.5".parse::<GridArg>().is_err());
    }

    #[test]
    fn maximally_mixed_passes_trivially() {
        let p = XStateParams::real([0.25; 4], 0.0, 0.0).unwrap();
        let r = verify_states(&[p], &[DensityMatrix4::maximally_mixed()], &cfg());
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.analytic_vs_brute.worst, 0.0);
        assert_eq!(r.tqc_identity.worst, 0.0);
        assert_eq!(r.general_signs, (0, 1, 0));
    }

    #[test]
    fn sampling_is_reproducible() {
        assert_eq!(sample_states(9, 3), sample_states(9, 3));
        assert_ne!(sample_states(9, 3).0, sample_states(10, 3).0);
    }
}

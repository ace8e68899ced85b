//! Config-driven experiment runner.
//!
//! An experiment is described by a TOML file:
//!
//! ```toml
//! gamma = "auto"          # or a number; must satisfy gamma < 2/L
//! max_iter = 2000
//! tol = 1e-9
//! trace_every = 1
//! check = true            # run the inequality checks inline
//! # gamma_sweep = [0.5, 1.0, 1.333, 1.9]   # multipliers of 1/L, optional
//!
//! [problem]
//! kind = "lasso"          # lasso | overlapping_group_lasso | tv2d |
//!                         # box_intersection | logistic_l1
//! n = 100
//! p = 50
//! lambda = 0.1
//! seed = 42
//! ```
//!
//! [`run`] builds the problem deterministically from the seed, solves it,
//! and writes `trace.csv` (plus `reports.csv` when checking, or one output
//! directory per step size plus `sweep_summary.csv` when sweeping). The exit
//! status is 0 on success, 2 on a certified inequality violation, and 1 on
//! configuration or numerical errors. Setting `TRIOP_SEED_OVERRIDE` replaces
//! every seed in the spec, which is how the fuzzing harness varies
//! instances without editing files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Deserialize;

use crate::core::{SolverConfig, SplitProblem, StepSize, TraceRecord};
use crate::diagnostics::InequalityReport;
use crate::prox::{
    project_box, prox_group_l1, prox_l1, prox_tv_cols, prox_tv_rows, prox_zero,
};
use crate::reference::{
    lasso_coordinate_descent, lasso_stationarity_residual, polish_lasso_solution,
};
use crate::smooth::{least_squares, logistic, zero_smooth};
use crate::solver::{construct_fixed_point, gradient_mapping, solve, SolveResult};
use crate::{resolve_step_size, Error, Result};

/// Declarative description of one experiment.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub problem: ProblemSpec,
    #[serde(default = "GammaSpec::auto")]
    pub gamma: GammaSpec,
    #[serde(default = "defaults::max_iter")]
    pub max_iter: usize,
    #[serde(default = "defaults::tol")]
    pub tol: f64,
    #[serde(default = "defaults::trace_every")]
    pub trace_every: usize,
    #[serde(default)]
    pub check: bool,
    /// Multipliers of `1/L`; when present, one run per multiplier.
    #[serde(default)]
    pub gamma_sweep: Option<Vec<f64>>,
}

mod defaults {
    pub fn max_iter() -> usize {
        1000
    }
    pub fn tol() -> f64 {
        1e-8
    }
    pub fn trace_every() -> usize {
        1
    }
}

/// Step size field: a positive number or the string `"auto"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GammaSpec {
    Value(f64),
    Keyword(String),
}

impl GammaSpec {
    fn auto() -> Self {
        GammaSpec::Keyword("auto".to_string())
    }

    pub fn to_step_size(&self) -> Result<StepSize> {
        match self {
            GammaSpec::Value(v) => Ok(StepSize::Fixed(*v)),
            GammaSpec::Keyword(s) if s == "auto" => Ok(StepSize::Auto),
            GammaSpec::Keyword(s) => Err(Error::Config(format!(
                "gamma must be a number or \"auto\", got \"{s}\""
            ))),
        }
    }
}

/// Problem families; every random family carries a mandatory seed.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemSpec {
    /// `1/2 ||Ax - b||^2 + lambda ||x||_1` with Gaussian design.
    Lasso {
        n: usize,
        p: usize,
        lambda: f64,
        seed: u64,
    },
    /// Signal denoising with two group-lasso penalties whose partitions
    /// overlap each other (blocks of `group_size`, second partition shifted
    /// by `overlap`).
    OverlappingGroupLasso {
        p: usize,
        group_size: usize,
        overlap: usize,
        lambda: f64,
        seed: u64,
    },
    /// Image denoising with the 2-D total variation split into row-wise and
    /// column-wise 1-D terms.
    Tv2d {
        rows: usize,
        cols: usize,
        lambda: f64,
        noise_seed: u64,
    },
    /// Feasibility for the intersection of two boxes (`f = 0`); the seed
    /// draws per-coordinate bounds inside each base box.
    BoxIntersection {
        p: usize,
        boxes: Vec<BoxBounds>,
        seed: u64,
    },
    /// `sum_i log(1 + exp(-y_i a_i' x)) + lambda ||x||_1`.
    LogisticL1 {
        n: usize,
        p: usize,
        lambda: f64,
        seed: u64,
    },
}

impl ProblemSpec {
    fn set_seed(&mut self, value: u64) {
        match self {
            ProblemSpec::Lasso { seed, .. }
            | ProblemSpec::OverlappingGroupLasso { seed, .. }
            | ProblemSpec::BoxIntersection { seed, .. }
            | ProblemSpec::LogisticL1 { seed, .. } => *seed = value,
            ProblemSpec::Tv2d { noise_seed, .. } => *noise_seed = value,
        }
    }
}

/// Scalar base bounds of one box, applied to every coordinate.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxBounds {
    pub lo: f64,
    pub hi: f64,
}

/// Known optimum of a problem instance, when one is computable.
#[derive(Clone, Debug)]
pub struct Reference {
    pub x_star: Array1<f64>,
    /// Subgradient of `g` at `x_star` entering the fixed-point construction.
    pub u: Array1<f64>,
    /// Fixed point for the spec's resolved step size.
    pub y_star: Array1<f64>,
}

/// A constructed problem together with its reference point, when available.
pub struct ProblemBundle {
    pub problem: SplitProblem,
    pub reference: Option<Reference>,
    /// Human-readable remark, e.g. why no reference is available.
    pub note: Option<String>,
}

fn randn_vec(rng: &mut ChaCha8Rng, n: usize) -> Array1<f64> {
    Array1::from_iter((0..n).map(|_| StandardNormal.sample(rng)))
}

fn randn_design(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Array2<f64> {
    let scale = 1.0 / (n as f64).sqrt();
    Array2::from_shape_fn((n, p), |_| {
        let v: f64 = StandardNormal.sample(rng);
        v * scale
    })
}

fn sparse_signal(rng: &mut ChaCha8Rng, p: usize) -> Array1<f64> {
    Array1::from_iter((0..p).map(|_| {
        let keep = rng.random::<f64>() < 0.2;
        let value: f64 = StandardNormal.sample(rng);
        if keep {
            value
        } else {
            0.0
        }
    }))
}

/// Blocks of `size` starting at `offset`, covering `0..p`. The leading
/// partial block (when `offset > 0`) and the trailing remainder become
/// groups of their own.
fn shifted_blocks(p: usize, size: usize, offset: usize) -> Vec<Vec<usize>> {
    let mut groups = Vec::new();
    let mut start = 0usize;
    if offset > 0 {
        groups.push((0..offset.min(p)).collect());
        start = offset.min(p);
    }
    while start < p {
        let end = (start + size).min(p);
        groups.push((start..end).collect());
        start = end;
    }
    groups
}

/// Builds a deterministic problem instance from the spec; for the lasso and
/// box-intersection families it also constructs the reference fixed point
/// and verifies it.
pub fn make_problem(spec: &ExperimentSpec) -> Result<ProblemBundle> {
    match &spec.problem {
        ProblemSpec::Lasso { n, p, lambda, seed } => {
            let (n, p, lambda) = (*n, *p, *lambda);
            if n == 0 || p == 0 {
                return Err(Error::Invalid("lasso needs n >= 1 and p >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let a = randn_design(&mut rng, n, p);
            let signal = sparse_signal(&mut rng, p);
            let noise = randn_vec(&mut rng, n) * 0.05;
            let b = a.dot(&signal) + noise;
            let x_star = polish_lasso_solution(
                &a,
                &b,
                lambda,
                &lasso_coordinate_descent(&a, &b, lambda, 1e-12)?,
            );
            let residual = lasso_stationarity_residual(&a, &b, lambda, &x_star);
            if residual > 1e-10 {
                return Err(Error::Invalid(format!(
                    "lasso reference did not reach stationarity: residual {residual:e}"
                )));
            }
            let problem = SplitProblem::new(
                least_squares(a, b)?,
                prox_l1(lambda)?,
                prox_zero(),
                p,
            );
            let u = -problem.f().grad(&x_star);
            let gamma = resolve_step_size(
                &SolverConfig {
                    gamma: spec.gamma.to_step_size()?,
                    ..Default::default()
                },
                problem.f().lipschitz(),
            )?;
            let y_star = construct_fixed_point(&x_star, &u, gamma);
            let g_star = gradient_mapping(&problem, gamma, &y_star)?;
            let g_norm = g_star.dot(&g_star).sqrt();
            if g_norm > 1e-8 {
                return Err(Error::Invalid(format!(
                    "lasso fixed-point construction failed: ||G(y*)|| = {g_norm:e}"
                )));
            }
            Ok(ProblemBundle {
                problem,
                reference: Some(Reference { x_star, u, y_star }),
                note: None,
            })
        }
        ProblemSpec::OverlappingGroupLasso {
            p,
            group_size,
            overlap,
            lambda,
            seed,
        } => {
            let (p, size, overlap, lambda) = (*p, *group_size, *overlap, *lambda);
            if p == 0 || size == 0 {
                return Err(Error::Invalid(
                    "group lasso needs p >= 1 and group_size >= 1".into(),
                ));
            }
            if overlap >= size {
                return Err(Error::Invalid(format!(
                    "overlap must be smaller than group_size, got {overlap} >= {size}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let signal = {
                // Piecewise-constant blocks so whole groups switch on or off.
                let mut s = Array1::<f64>::zeros(p);
                let mut start = 0usize;
                while start < p {
                    let end = (start + size).min(p);
                    let level: f64 = StandardNormal.sample(&mut rng);
                    let keep = rng.random::<f64>() < 0.5;
                    for i in start..end {
                        s[i] = if keep { level } else { 0.0 };
                    }
                    start = end;
                }
                s
            };
            let b = &signal + &(randn_vec(&mut rng, p) * 0.1);
            let problem = SplitProblem::new(
                least_squares(Array2::eye(p), b)?,
                prox_group_l1(shifted_blocks(p, size, 0), p, lambda)?,
                prox_group_l1(shifted_blocks(p, size, overlap), p, lambda)?,
                p,
            );
            Ok(ProblemBundle {
                problem,
                reference: None,
                note: Some("no reference available for this family".to_string()),
            })
        }
        ProblemSpec::Tv2d {
            rows,
            cols,
            lambda,
            noise_seed,
        } => {
            let (rows, cols, lambda) = (*rows, *cols, *lambda);
            if rows == 0 || cols == 0 {
                return Err(Error::Invalid("tv2d needs rows >= 1 and cols >= 1".into()));
            }
            let p = rows * cols;
            let mut rng = ChaCha8Rng::seed_from_u64(*noise_seed);
            // Four-quadrant piecewise-constant image plus noise.
            let mut b = Array1::<f64>::zeros(p);
            for r in 0..rows {
                for c in 0..cols {
                    let level = match (r >= rows / 2, c >= cols / 2) {
                        (false, false) => 0.0,
                        (false, true) => 1.0,
                        (true, false) => 2.0,
                        (true, true) => 3.0,
                    };
                    let noise: f64 = StandardNormal.sample(&mut rng);
                    b[r * cols + c] = level + 0.2 * noise;
                }
            }
            let problem = SplitProblem::new(
                least_squares(Array2::eye(p), b)?,
                prox_tv_rows(rows, cols, lambda)?,
                prox_tv_cols(rows, cols, lambda)?,
                p,
            );
            Ok(ProblemBundle {
                problem,
                reference: None,
                note: Some("no reference available for this family".to_string()),
            })
        }
        ProblemSpec::BoxIntersection { p, boxes, seed } => {
            let p = *p;
            if p == 0 {
                return Err(Error::Invalid("box_intersection needs p >= 1".into()));
            }
            if boxes.len() != 2 {
                return Err(Error::Invalid(format!(
                    "box_intersection needs exactly two boxes, got {}",
                    boxes.len()
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut bounds = Vec::with_capacity(2);
            for bx in boxes {
                if bx.lo.is_nan() || bx.hi.is_nan() || bx.hi < bx.lo {
                    return Err(Error::Invalid(format!(
                        "box requires lo <= hi, got [{}, {}]",
                        bx.lo, bx.hi
                    )));
                }
                let width = bx.hi - bx.lo;
                let mut lo = Array1::<f64>::zeros(p);
                let mut hi = Array1::<f64>::zeros(p);
                for i in 0..p {
                    // Random sub-box that always keeps the central half, so
                    // same-base boxes are guaranteed to intersect.
                    lo[i] = bx.lo + 0.25 * width * rng.random::<f64>();
                    hi[i] = bx.hi - 0.25 * width * rng.random::<f64>();
                }
                bounds.push((lo, hi));
            }
            let (lo_a, hi_a) = bounds[0].clone();
            let (lo_b, hi_b) = bounds[1].clone();
            let mut midpoint = Array1::<f64>::zeros(p);
            let mut feasible = true;
            for i in 0..p {
                let lo = lo_a[i].max(lo_b[i]);
                let hi = hi_a[i].min(hi_b[i]);
                if lo > hi {
                    feasible = false;
                    break;
                }
                midpoint[i] = 0.5 * (lo + hi);
            }
            let problem = SplitProblem::new(
                zero_smooth(p),
                project_box(lo_a, hi_a)?,
                project_box(lo_b, hi_b)?,
                p,
            );
            if feasible {
                // Any point of the intersection is a fixed point with u = 0.
                let reference = Reference {
                    x_star: midpoint.clone(),
                    u: Array1::zeros(p),
                    y_star: midpoint,
                };
                Ok(ProblemBundle {
                    problem,
                    reference: Some(reference),
                    note: None,
                })
            } else {
                Ok(ProblemBundle {
                    problem,
                    reference: None,
                    note: Some(
                        "no reference available: the boxes are disjoint, so the \
                         feasibility problem has no solution"
                            .to_string(),
                    ),
                })
            }
        }
        ProblemSpec::LogisticL1 { n, p, lambda, seed } => {
            let (n, p, lambda) = (*n, *p, *lambda);
            if n == 0 || p == 0 {
                return Err(Error::Invalid("logistic_l1 needs n >= 1 and p >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let a = randn_design(&mut rng, n, p) * (n as f64).sqrt();
            let signal = randn_vec(&mut rng, p);
            let margins = a.dot(&signal);
            let labels = Array1::from_iter(margins.iter().map(|&m| {
                let flip = rng.random::<f64>() < 0.1;
                let label = if m >= 0.0 { 1.0 } else { -1.0 };
                if flip {
                    -label
                } else {
                    label
                }
            }));
            let problem = SplitProblem::new(
                logistic(a, labels)?,
                prox_l1(lambda)?,
                prox_zero(),
                p,
            );
            Ok(ProblemBundle {
                problem,
                reference: None,
                note: Some("no reference available for this family".to_string()),
            })
        }
    }
}

/// CLI flag overrides applied on top of the parsed spec.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub check: Option<bool>,
    pub max_iter: Option<usize>,
    pub tol: Option<f64>,
}

/// Runs the experiment at `spec_path`, writing outputs under `out_dir`.
/// Returns the process exit status: 0 success, 2 inequality violation,
/// 1 configuration or numerical error.
pub fn run(spec_path: &Path, out_dir: &Path, overrides: &Overrides) -> i32 {
    match run_inner(spec_path, out_dir, overrides) {
        Ok(summary) => {
            println!("{summary}");
            0
        }
        Err(err @ Error::InequalityViolation { .. }) => {
            eprintln!("error: {err}");
            2
        }
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn run_inner(spec_path: &Path, out_dir: &Path, overrides: &Overrides) -> Result<String> {
    let text = fs::read_to_string(spec_path)?;
    let mut spec: ExperimentSpec =
        toml::from_str(&text).map_err(|e| Error::Spec(e.to_string()))?;
    if let Ok(value) = std::env::var("TRIOP_SEED_OVERRIDE") {
        let seed: u64 = value.parse().map_err(|_| {
            Error::Config(format!(
                "TRIOP_SEED_OVERRIDE must be an unsigned integer, got \"{value}\""
            ))
        })?;
        spec.problem.set_seed(seed);
    }
    if let Some(check) = overrides.check {
        spec.check = check;
    }
    if let Some(max_iter) = overrides.max_iter {
        spec.max_iter = max_iter;
    }
    if let Some(tol) = overrides.tol {
        spec.tol = tol;
    }
    fs::create_dir_all(out_dir)?;
    let bundle = make_problem(&spec)?;
    if let Some(note) = &bundle.note {
        eprintln!("note: {note}");
    }
    let started = Instant::now();
    let summary = match spec.gamma_sweep.clone() {
        Some(multipliers) => run_sweep(&spec, &bundle, &multipliers, out_dir)?,
        None => {
            let config = SolverConfig {
                gamma: spec.gamma.to_step_size()?,
                max_iter: spec.max_iter,
                tol: spec.tol,
                trace_every: spec.trace_every,
                check_inequalities: spec.check,
            };
            let y0 = Array1::zeros(bundle.problem.dim());
            let y_ref = bundle.reference.as_ref().map(|r| &r.y_star);
            let result = solve(&bundle.problem, &config, &y0, y_ref)?;
            write_trace_csv(&out_dir.join("trace.csv"), &result.trace, result.gamma_used)?;
            if spec.check {
                write_reports_csv(&out_dir.join("reports.csv"), &result.reports)?;
            }
            format!(
                "{} iterations, final ||G|| = {:.3e}, converged = {}",
                result.iters,
                result.trace.last().map(|t| t.gmap_norm).unwrap_or(f64::NAN),
                result.converged
            )
        }
    };
    Ok(format!(
        "{summary}, wall time {:.3} s",
        started.elapsed().as_secs_f64()
    ))
}

fn run_sweep(
    spec: &ExperimentSpec,
    bundle: &ProblemBundle,
    multipliers: &[f64],
    out_dir: &Path,
) -> Result<String> {
    let lipschitz = bundle.problem.f().lipschitz();
    if lipschitz <= 0.0 {
        return Err(Error::Config(
            "gamma_sweep multiplies 1/L and needs a positive Lipschitz constant".into(),
        ));
    }
    let mut rows = Vec::new();
    for &multiplier in multipliers {
        let gamma = multiplier / lipschitz;
        let config = SolverConfig {
            gamma: StepSize::Fixed(gamma),
            max_iter: spec.max_iter,
            tol: spec.tol,
            trace_every: spec.trace_every,
            check_inequalities: spec.check,
        };
        let y_star = bundle
            .reference
            .as_ref()
            .map(|r| construct_fixed_point(&r.x_star, &r.u, gamma));
        let y0 = Array1::zeros(bundle.problem.dim());
        let result = solve(&bundle.problem, &config, &y0, y_star.as_ref())?;
        let sub_dir = out_dir.join(format!("gamma_{multiplier}"));
        fs::create_dir_all(&sub_dir)?;
        write_trace_csv(&sub_dir.join("trace.csv"), &result.trace, result.gamma_used)?;
        if spec.check {
            write_reports_csv(&sub_dir.join("reports.csv"), &result.reports)?;
        }
        rows.push((multiplier, gamma, result));
    }
    write_sweep_csv(&out_dir.join("sweep_summary.csv"), &rows)?;
    Ok(format!("swept {} step sizes", rows.len()))
}

/// Fixed-width float formatting: 17 significant decimal digits, enough to
/// round-trip any f64 exactly; infinities print as `inf`.
fn fmt_float(value: f64) -> String {
    format!("{value:.16e}")
}

pub(crate) fn write_trace_csv(path: &Path, trace: &[TraceRecord], gamma: f64) -> Result<()> {
    let mut out = String::from("iter,gmap_norm,objective,infeas,dist_to_ref,gamma\n");
    for rec in trace {
        let dist = rec.dist_to_ref.map(fmt_float).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            rec.iter,
            fmt_float(rec.gmap_norm),
            fmt_float(rec.objective),
            fmt_float(rec.infeas),
            dist,
            fmt_float(gamma)
        );
    }
    fs::write(path, out)?;
    Ok(())
}

pub(crate) fn write_reports_csv(path: &Path, reports: &[InequalityReport]) -> Result<()> {
    let mut out = String::from("name,location,residual,passed\n");
    for rep in reports {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            rep.name,
            rep.location,
            fmt_float(rep.residual),
            rep.passed
        );
    }
    fs::write(path, out)?;
    Ok(())
}

fn write_sweep_csv(path: &Path, rows: &[(f64, f64, SolveResult)]) -> Result<()> {
    let mut out = String::from("gamma_mult,gamma,iters_to_tol,final_gmap_norm\n");
    for (multiplier, gamma, result) in rows {
        let iters = if result.converged {
            result.iters.to_string()
        } else {
            String::new()
        };
        let final_norm = result.trace.last().map(|t| t.gmap_norm).unwrap_or(f64::NAN);
        let _ = writeln!(
            out,
            "{},{},{},{}",
            multiplier,
            fmt_float(*gamma),
            iters,
            fmt_float(final_norm)
        );
    }
    fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lasso_spec(seed: u64) -> ExperimentSpec {
        ExperimentSpec {
            problem: ProblemSpec::Lasso {
                n: 20,
                p: 8,
                lambda: 0.1,
                seed,
            },
            gamma: GammaSpec::auto(),
            max_iter: 500,
            tol: 1e-9,
            trace_every: 1,
            check: false,
            gamma_sweep: None,
        }
    }

    #[test]
    fn lasso_reference_is_a_fixed_point() {
        let bundle = make_problem(&lasso_spec(3)).unwrap();
        let reference = bundle.reference.unwrap();
        let gamma = resolve_step_size(
            &SolverConfig::default(),
            bundle.problem.f().lipschitz(),
        )
        .unwrap();
        let g = gradient_mapping(&bundle.problem, gamma, &reference.y_star).unwrap();
        assert!(g.dot(&g).sqrt() <= 1e-8);
    }

    #[test]
    fn same_seed_reproduces_the_instance() {
        let a = make_problem(&lasso_spec(11)).unwrap();
        let b = make_problem(&lasso_spec(11)).unwrap();
        // Identical data gives bitwise identical oracle evaluations.
        let y = Array1::from_iter((0..8).map(|i| 0.3 * i as f64 - 1.0));
        let ga = a.problem.f().grad(&y);
        let gb = b.problem.f().grad(&y);
        assert_eq!(ga, gb);
        assert_eq!(
            a.reference.as_ref().unwrap().x_star,
            b.reference.as_ref().unwrap().x_star
        );
    }

    #[test]
    fn disjoint_boxes_have_no_reference_but_still_build() {
        let spec = ExperimentSpec {
            problem: ProblemSpec::BoxIntersection {
                p: 4,
                boxes: vec![
                    BoxBounds { lo: 0.0, hi: 1.0 },
                    BoxBounds { lo: 2.0, hi: 3.0 },
                ],
                seed: 5,
            },
            gamma: GammaSpec::Value(1.0),
            max_iter: 50,
            tol: 1e-8,
            trace_every: 1,
            check: false,
            gamma_sweep: None,
        };
        let bundle = make_problem(&spec).unwrap();
        assert!(bundle.reference.is_none());
        assert!(bundle.note.unwrap().contains("disjoint"));
        let config = SolverConfig {
            gamma: StepSize::Fixed(1.0),
            max_iter: 50,
            tol: 1e-8,
            ..Default::default()
        };
        let result = solve(&bundle.problem, &config, &Array1::zeros(4), None).unwrap();
        assert!(!result.converged);
    }

    #[test]
    fn overlapping_partitions_cover_every_index() {
        let first = shifted_blocks(10, 4, 0);
        let second = shifted_blocks(10, 4, 2);
        assert_eq!(first, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![8, 9]]);
        assert_eq!(
            second,
            vec![vec![0, 1], vec![2, 3, 4, 5], vec![6, 7, 8, 9]]
        );
    }

    #[test]
    fn every_family_builds_and_steps() {
        let specs = vec![
            ProblemSpec::Lasso {
                n: 12,
                p: 6,
                lambda: 0.2,
                seed: 1,
            },
            ProblemSpec::OverlappingGroupLasso {
                p: 12,
                group_size: 4,
                overlap: 2,
                lambda: 0.3,
                seed: 2,
            },
            ProblemSpec::Tv2d {
                rows: 4,
                cols: 5,
                lambda: 0.4,
                noise_seed: 3,
            },
            ProblemSpec::BoxIntersection {
                p: 6,
                boxes: vec![
                    BoxBounds { lo: -1.0, hi: 1.0 },
                    BoxBounds { lo: -1.0, hi: 1.0 },
                ],
                seed: 4,
            },
            ProblemSpec::LogisticL1 {
                n: 15,
                p: 5,
                lambda: 0.05,
                seed: 5,
            },
        ];
        for problem in specs {
            let spec = ExperimentSpec {
                problem,
                gamma: GammaSpec::Value(0.1),
                max_iter: 20,
                tol: 1e-6,
                trace_every: 5,
                check: false,
                gamma_sweep: None,
            };
            let bundle = make_problem(&spec).unwrap();
            let config = SolverConfig {
                gamma: StepSize::Fixed(0.1),
                max_iter: 20,
                tol: 1e-6,
                trace_every: 5,
                check_inequalities: false,
            };
            let y0 = Array1::zeros(bundle.problem.dim());
            solve(&bundle.problem, &config, &y0, None).unwrap();
        }
    }

    #[test]
    fn float_formatting_round_trips_and_spells_inf() {
        assert_eq!(fmt_float(f64::INFINITY), "inf");
        let value = 0.1 + 0.2;
        let text = fmt_float(value);
        assert_eq!(text.parse::<f64>().unwrap(), value);
    }
}

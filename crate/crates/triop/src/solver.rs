//! The three-operator splitting iteration, its gradient mapping, stopping
//! logic, and the fixed-point construction used to build exact reference
//! points.

use ndarray::Array1;

use crate::core::{
    resolve_step_size, IterateState, SolverConfig, SplitProblem, TraceRecord,
};
use crate::diagnostics::{
    dist_decrease_terms, gm_monotone_terms, make_report, master_terms, rate_bound_terms,
    CheckName, InequalityReport,
};
use crate::{Error, Result};

/// Largest gradient-mapping norm a point may have and still be accepted as a
/// reference fixed point by the distance-based checks.
pub const FIXED_POINT_TOL: f64 = 1e-10;

/// Outcome of a [`solve`] run.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub y_final: Array1<f64>,
    /// `prox_{gamma g}(y_final)`, the solution candidate.
    pub x_final: Array1<f64>,
    /// Number of updates taken.
    pub iters: usize,
    /// True iff the final gradient-mapping norm is at most `tol`.
    pub converged: bool,
    pub trace: Vec<TraceRecord>,
    pub gamma_used: f64,
    /// Inequality reports collected at traced iterations when
    /// `check_inequalities` is on; empty otherwise.
    pub reports: Vec<InequalityReport>,
}

fn ensure_finite(v: &Array1<f64>, oracle: &'static str) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Numerical { oracle })
    }
}

/// One evaluation of the splitting recurrence at `y`:
///
/// ```text
/// x  = prox_{gamma g}(y)
/// z  = prox_{gamma h}(2x - y - gamma grad f(x))
/// y+ = y - x + z
/// ```
///
/// together with the gradient mapping `G(y) = (x - z)/gamma`. Non-finite
/// oracle output aborts with an error naming the offending oracle.
pub fn tos_step(problem: &SplitProblem, gamma: f64, y: &Array1<f64>) -> Result<IterateState> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::Config(format!(
            "step size must be a positive finite number, got {gamma}"
        )));
    }
    if y.len() != problem.dim() {
        return Err(Error::Invalid(format!(
            "point has length {} but the problem dimension is {}",
            y.len(),
            problem.dim()
        )));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("evaluation point is not finite".into()));
    }
    let x = problem.g().prox(gamma, y);
    assert_eq!(x.len(), y.len(), "g.prox returned the wrong dimension");
    ensure_finite(&x, "g.prox")?;
    let grad_x = problem.f().grad(&x);
    assert_eq!(grad_x.len(), y.len(), "f.grad returned the wrong dimension");
    ensure_finite(&grad_x, "f.grad")?;
    let midpoint = 2.0 * &x - y - gamma * &grad_x;
    let z = problem.h().prox(gamma, &midpoint);
    assert_eq!(z.len(), y.len(), "h.prox returned the wrong dimension");
    ensure_finite(&z, "h.prox")?;
    let y_next = y - &x + &z;
    let gmap = (&x - &z) / gamma;
    Ok(IterateState {
        y: y.clone(),
        x,
        z,
        y_next,
        gmap,
        grad_x,
    })
}

/// The gradient mapping `G(y) = (y - y+)/gamma = (x - z)/gamma`; a pure
/// function of `(problem, gamma, y)`.
pub fn gradient_mapping(
    problem: &SplitProblem,
    gamma: f64,
    y: &Array1<f64>,
) -> Result<Array1<f64>> {
    Ok(tos_step(problem, gamma, y)?.gmap)
}

/// Builds the fixed point `y* = x* + gamma u` from a minimizer `x*` and a
/// subgradient `u` of `g` at `x*` satisfying `u + v = -grad f(x*)` for some
/// subgradient `v` of `h`. The caller supplies `u`; validity is observable
/// through the postcondition `G(y*) = 0` and `prox_{gamma g}(y*) = x*`.
pub fn construct_fixed_point(
    x_star: &Array1<f64>,
    u: &Array1<f64>,
    gamma: f64,
) -> Array1<f64> {
    assert_eq!(x_star.len(), u.len());
    x_star + gamma * u
}

fn push_record(
    trace: &mut Vec<TraceRecord>,
    problem: &SplitProblem,
    state: &IterateState,
    iter: usize,
    gamma: f64,
    y_ref: Option<&Array1<f64>>,
) {
    let gmap_norm = state.gmap_norm();
    let dist_to_ref = y_ref.map(|r| {
        let d = &state.y - r;
        d.dot(&d).sqrt()
    });
    trace.push(TraceRecord {
        iter,
        gmap_norm,
        objective: problem.objective(&state.x),
        dist_to_ref,
        infeas: gamma * gmap_norm,
    });
}

fn check_and_push(
    reports: &mut Vec<InequalityReport>,
    record: bool,
    name: CheckName,
    location: usize,
    residual: f64,
    scale: f64,
) -> Result<()> {
    let report = make_report(name, location, residual, scale);
    if !report.passed {
        return Err(Error::InequalityViolation {
            name,
            iteration: location,
            residual,
        });
    }
    if record {
        reports.push(report);
    }
    Ok(())
}

/// Iterates `y^{k+1} = y^k - gamma G(y^k)` from `y0` until the gradient
/// mapping norm reaches `config.tol` or the iteration budget runs out.
///
/// A trace row is recorded at iteration 0, every `trace_every` iterations,
/// and at the final iteration. When `y_ref` is given its distance column is
/// filled in; when `check_inequalities` is additionally set, `y_ref` must be
/// a numerical fixed point and every convergence inequality is evaluated
/// inline at every iteration, aborting on the first violation (reports are
/// collected at traced iterations).
pub fn solve(
    problem: &SplitProblem,
    config: &SolverConfig,
    y0: &Array1<f64>,
    y_ref: Option<&Array1<f64>>,
) -> Result<SolveResult> {
    if config.max_iter == 0 {
        return Err(Error::Config("max_iter must be positive".into()));
    }
    if config.trace_every == 0 {
        return Err(Error::Config("trace_every must be positive".into()));
    }
    if config.tol.is_nan() || config.tol < 0.0 {
        return Err(Error::Config(format!(
            "tol must be nonnegative, got {}",
            config.tol
        )));
    }
    let lipschitz = problem.f().lipschitz();
    let gamma = resolve_step_size(config, lipschitz)?;
    if let Some(r) = y_ref {
        if r.len() != problem.dim() {
            return Err(Error::Invalid(format!(
                "reference point has length {} but the problem dimension is {}",
                r.len(),
                problem.dim()
            )));
        }
    }
    let dist0_sq = y_ref.map(|r| {
        let d = y0 - r;
        d.dot(&d)
    });
    if config.check_inequalities {
        if let Some(r) = y_ref {
            let g_star = gradient_mapping(problem, gamma, r)?;
            let g_norm = g_star.dot(&g_star).sqrt();
            if g_norm > FIXED_POINT_TOL {
                return Err(Error::InvalidReference { gmap_norm: g_norm });
            }
        }
    }

    let mut state = tos_step(problem, gamma, y0)?;
    let mut k = 0usize;
    let mut trace = Vec::new();
    let mut reports = Vec::new();
    push_record(&mut trace, problem, &state, k, gamma, y_ref);
    if config.check_inequalities {
        if let Some(d0) = dist0_sq {
            let (residual, scale) =
                rate_bound_terms(d0, k, state.gmap_norm(), gamma, lipschitz);
            check_and_push(&mut reports, true, CheckName::RateBound, k, residual, scale)?;
        }
    }

    let converged = loop {
        if state.gmap_norm() <= config.tol {
            break true;
        }
        if k >= config.max_iter {
            break false;
        }
        let next = tos_step(problem, gamma, &state.y_next)?;
        if config.check_inequalities {
            let record_here = k.is_multiple_of(config.trace_every);
            let (residual, scale) = master_terms(&state, &next, gamma);
            check_and_push(&mut reports, record_here, CheckName::Master, k, residual, scale)?;
            let (residual, scale) = gm_monotone_terms(&state, &next, gamma, lipschitz);
            check_and_push(
                &mut reports,
                record_here,
                CheckName::GmMonotone,
                k,
                residual,
                scale,
            )?;
            if let Some(r) = y_ref {
                let (residual, scale) = dist_decrease_terms(&state, r, gamma, lipschitz);
                check_and_push(
                    &mut reports,
                    record_here,
                    CheckName::DistDecrease,
                    k,
                    residual,
                    scale,
                )?;
            }
        }
        k += 1;
        state = next;
        let record_here = k.is_multiple_of(config.trace_every);
        if record_here {
            push_record(&mut trace, problem, &state, k, gamma, y_ref);
        }
        if config.check_inequalities {
            if let Some(d0) = dist0_sq {
                let (residual, scale) =
                    rate_bound_terms(d0, k, state.gmap_norm(), gamma, lipschitz);
                check_and_push(
                    &mut reports,
                    record_here,
                    CheckName::RateBound,
                    k,
                    residual,
                    scale,
                )?;
            }
        }
    };
    if trace.last().map(|t| t.iter) != Some(k) {
        push_record(&mut trace, problem, &state, k, gamma, y_ref);
    }

    Ok(SolveResult {
        y_final: state.y.clone(),
        x_final: state.x.clone(),
        iters: k,
        converged,
        trace,
        gamma_used: gamma,
        reports,
    })
}

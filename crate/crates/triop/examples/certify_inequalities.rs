//! Certify the convergence inequalities on a concrete trajectory: build a
//! lasso instance with a known fixed point, solve it with the inline checks
//! armed, and summarize the residual slack of each inequality.
//!
//! Run with: cargo run --example certify_inequalities

use ndarray::Array1;
use triop::diagnostics::{check_rate_bound, CheckName};
use triop::experiment::{make_problem, ExperimentSpec, GammaSpec, ProblemSpec};
use triop::{solve, SolverConfig, StepSize};

fn main() {
    let spec = ExperimentSpec {
        problem: ProblemSpec::Lasso {
            n: 80,
            p: 40,
            lambda: 0.1,
            seed: 1,
        },
        gamma: GammaSpec::Keyword("auto".to_string()),
        max_iter: 2000,
        tol: 1e-9,
        trace_every: 1,
        check: true,
        gamma_sweep: None,
    };
    let bundle = make_problem(&spec).expect("instance");
    let reference = bundle.reference.as_ref().expect("lasso reference");
    let lipschitz = bundle.problem.f().lipschitz();
    let gamma = 4.0 / (3.0 * lipschitz);

    let config = SolverConfig {
        gamma: StepSize::Fixed(gamma),
        max_iter: 2000,
        tol: 1e-9,
        trace_every: 1,
        check_inequalities: true,
    };
    let y0 = Array1::zeros(bundle.problem.dim());
    // Any inequality violation would abort this call with an error.
    let result = solve(&bundle.problem, &config, &y0, Some(&reference.y_star))
        .expect("certified run");
    println!(
        "certified {} iterations at gamma = 4/(3L) = {:.4}; all inline checks passed",
        result.iters, gamma
    );

    for name in [
        CheckName::Master,
        CheckName::GmMonotone,
        CheckName::DistDecrease,
        CheckName::RateBound,
    ] {
        let slacks: Vec<f64> = result
            .reports
            .iter()
            .filter(|r| r.name == name)
            .map(|r| r.residual)
            .collect();
        let min = slacks.iter().cloned().fold(f64::INFINITY, f64::min);
        println!(
            "  {name:13}  {} evaluations, smallest slack {min:.3e}",
            slacks.len()
        );
    }

    // The rate bound, re-derived from the recorded trace.
    let reports = check_rate_bound(
        &result.trace,
        &y0,
        &reference.y_star,
        gamma,
        lipschitz,
    )
    .expect("rate bound");
    let tightest = reports
        .iter()
        .map(|r| r.residual)
        .fold(f64::INFINITY, f64::min);
    println!(
        "rate bound re-checked on {} trace rows; tightest slack {tightest:.3e}",
        reports.len()
    );
}

//! Sweep the step size as a multiple of 1/L on one lasso instance and
//! report iterations-to-tolerance; the rate analysis puts the best
//! worst-case constant at gamma = 4/(3L).
//!
//! Run with: cargo run --example step_size_sweep

use ndarray::Array1;
use triop::experiment::{make_problem, ExperimentSpec, GammaSpec, ProblemSpec};
use triop::{construct_fixed_point, solve, SolverConfig, StepSize};

fn main() {
    let spec = ExperimentSpec {
        problem: ProblemSpec::Lasso {
            n: 100,
            p: 50,
            lambda: 0.1,
            seed: 0,
        },
        gamma: GammaSpec::Keyword("auto".to_string()),
        max_iter: 5000,
        tol: 1e-9,
        trace_every: 1,
        check: false,
        gamma_sweep: None,
    };
    let bundle = make_problem(&spec).expect("instance");
    let lipschitz = bundle.problem.f().lipschitz();
    let reference = bundle.reference.as_ref().expect("reference");
    println!("L = {lipschitz:.4}, admissible step sizes are below 2/L = {:.4}", 2.0 / lipschitz);
    println!("multiplier   gamma      iterations   final ||G||");

    for multiplier in [0.25, 0.5, 0.75, 1.0, 4.0 / 3.0, 1.6, 1.9, 1.99] {
        let gamma = multiplier / lipschitz;
        let y_star = construct_fixed_point(&reference.x_star, &reference.u, gamma);
        let config = SolverConfig {
            gamma: StepSize::Fixed(gamma),
            max_iter: 5000,
            tol: 1e-9,
            trace_every: 5000,
            check_inequalities: false,
        };
        let y0 = Array1::zeros(bundle.problem.dim());
        let result = solve(&bundle.problem, &config, &y0, Some(&y_star)).expect("run");
        println!(
            "  {multiplier:<9.3}  {gamma:<9.4}  {:<11}  {:.3e}{}",
            result.iters,
            result.trace.last().unwrap().gmap_norm,
            if result.converged { "" } else { "  (budget hit)" }
        );
    }
}

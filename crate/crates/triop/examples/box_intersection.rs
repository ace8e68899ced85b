//! Convex feasibility for two boxes: with f = 0 the splitting is exactly
//! Douglas-Rachford, and the iterates land in the intersection even though
//! the objective is infinite along the way.
//!
//! Run with: cargo run --example box_intersection

use ndarray::array;
use triop::prox::project_box;
use triop::smooth::zero_smooth;
use triop::{solve, SolverConfig, SplitProblem, StepSize};

fn main() {
    let p = 4;
    let first = project_box(
        array![-1.0, -1.0, -1.0, -1.0],
        array![0.5, 0.5, 0.5, 0.5],
    )
    .unwrap();
    let second = project_box(
        array![0.0, 0.0, 0.0, 0.0],
        array![2.0, 2.0, 2.0, 2.0],
    )
    .unwrap();
    // The intersection is [0, 0.5]^4.
    let problem = SplitProblem::new(zero_smooth(p), first, second, p);

    let config = SolverConfig {
        // f = 0 means L = 0: any positive step size is admissible, but it
        // must be given explicitly.
        gamma: StepSize::Fixed(1.0),
        tol: 1e-12,
        max_iter: 500,
        trace_every: 5,
        ..Default::default()
    };
    let y0 = array![-7.0, 3.0, 9.0, -4.0];
    let result = solve(&problem, &config, &y0, None).unwrap();

    println!("start              : {y0}");
    println!("feasible point     : {}", result.x_final);
    println!(
        "converged = {} after {} iterations",
        result.converged, result.iters
    );
    for record in result.trace.iter().take(5) {
        println!(
            "  k = {:3}  ||G|| = {:.3e}  objective = {:8}  infeasibility = {:.3e}",
            record.iter, record.gmap_norm, record.objective, record.infeas
        );
    }
    let inside = result
        .x_final
        .iter()
        .all(|&v| (0.0..=0.5).contains(&v));
    println!("final point inside both boxes: {inside}");
}

//! l1-penalized logistic regression with a box constraint on the weights:
//! the smooth term is the logistic loss, g the l1 penalty, h the box.
//!
//! Run with: cargo run --example logistic_l1

use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use triop::prox::{project_box_scalar, prox_l1};
use triop::smooth::logistic;
use triop::{solve, SolverConfig, SplitProblem};

fn main() {
    let (n, p, lambda) = (120, 15, 4.0);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let a = Array2::from_shape_fn((n, p), |_| StandardNormal.sample(&mut rng));
    let weights = Array1::from_shape_fn(p, |i| if i < 3 { 1.0 } else { 0.0 });
    let labels = Array1::from_iter(a.rows().into_iter().map(|row| {
        let margin = row.dot(&weights);
        let flip = rng.random::<f64>() < 0.05;
        let label = if margin >= 0.0 { 1.0 } else { -1.0 };
        if flip {
            -label
        } else {
            label
        }
    }));

    let problem = SplitProblem::new(
        logistic(a.clone(), labels.clone()).unwrap(),
        prox_l1(lambda).unwrap(),
        project_box_scalar(-2.0, 2.0, p).unwrap(),
        p,
    );
    println!("Lipschitz constant of the loss gradient: {:.3}", problem.f().lipschitz());

    let config = SolverConfig {
        tol: 1e-8,
        max_iter: 5000,
        trace_every: 200,
        ..Default::default()
    };
    let result = solve(&problem, &config, &Array1::zeros(p), None).unwrap();
    println!(
        "converged = {} after {} iterations, final ||G|| = {:.3e}",
        result.converged,
        result.iters,
        result.trace.last().unwrap().gmap_norm
    );

    let x = &result.x_final;
    let correct = a
        .rows()
        .into_iter()
        .zip(labels.iter())
        .filter(|(row, &y)| row.dot(x) * y > 0.0)
        .count();
    println!("training accuracy: {}/{n}", correct);
    let active: Vec<usize> = (0..p).filter(|&i| x[i].abs() > 1e-6).collect();
    println!("active coordinates: {active:?} (true support is [0, 1, 2])");
}

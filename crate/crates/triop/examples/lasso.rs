//! Lasso regression: least squares + l1 penalty, solved by the splitting
//! and cross-checked against the coordinate-descent reference.
//!
//! Run with: cargo run --example lasso

use ndarray::{Array1, Array2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use triop::prox::{prox_l1, prox_zero};
use triop::reference::lasso_coordinate_descent;
use triop::smooth::least_squares;
use triop::{solve, SolverConfig, SplitProblem};

fn main() {
    let (n, p, lambda) = (60, 20, 0.1);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let a = Array2::from_shape_fn((n, p), |_| {
        let v: f64 = StandardNormal.sample(&mut rng);
        v / (n as f64).sqrt()
    });
    let signal =
        Array1::from_iter((0..p).map(|i| if i % 5 == 0 { 1.5 } else { 0.0 }));
    let noise = Array1::from_iter((0..n).map(|_| {
        let v: f64 = StandardNormal.sample(&mut rng);
        0.05 * v
    }));
    let b = a.dot(&signal) + noise;

    let problem = SplitProblem::new(
        least_squares(a.clone(), b.clone()).unwrap(),
        prox_l1(lambda).unwrap(),
        prox_zero(),
        p,
    );
    let config = SolverConfig {
        tol: 1e-10,
        max_iter: 5000,
        trace_every: 50,
        ..Default::default()
    };
    let result = solve(&problem, &config, &Array1::zeros(p), None).unwrap();
    println!(
        "converged = {} after {} iterations, final ||G|| = {:.3e}",
        result.converged,
        result.iters,
        result.trace.last().unwrap().gmap_norm
    );

    let oracle = lasso_coordinate_descent(&a, &b, lambda, 1e-12).unwrap();
    let gap = result
        .x_final
        .iter()
        .zip(oracle.iter())
        .fold(0.0f64, |m, (x, o)| m.max((x - o).abs()));
    let nonzero = result.x_final.iter().filter(|v| v.abs() > 1e-8).count();
    println!("deviation from coordinate descent: {gap:.3e} (l-inf)");
    println!("{nonzero}/{p} coefficients survive the l1 penalty");
}

//! 2-D total variation denoising. The 2-D penalty is split into two
//! proximable pieces: row-wise TV goes to g and column-wise TV to h, each
//! solved exactly per line by the taut-string routine.
//!
//! Run with: cargo run --example tv_denoise_2d

use ndarray::Array1;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use triop::prox::{prox_tv_cols, prox_tv_rows};
use triop::smooth::least_squares;
use triop::{solve, SolverConfig, SplitProblem};

fn main() {
    let (rows, cols, lambda) = (10, 14, 0.4);
    let p = rows * cols;
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // Piecewise-constant quadrants plus noise.
    let clean = Array1::from_shape_fn(p, |idx| {
        let (r, c) = (idx / cols, idx % cols);
        match (r >= rows / 2, c >= cols / 2) {
            (false, false) => 0.0,
            (false, true) => 1.0,
            (true, false) => 2.0,
            (true, true) => 3.0,
        }
    });
    let noisy = &clean
        + &Array1::from_iter((0..p).map(|_| {
            let v: f64 = StandardNormal.sample(&mut rng);
            0.3 * v
        }));

    let problem = SplitProblem::new(
        least_squares(ndarray::Array2::eye(p), noisy.clone()).unwrap(),
        prox_tv_rows(rows, cols, lambda).unwrap(),
        prox_tv_cols(rows, cols, lambda).unwrap(),
        p,
    );
    let config = SolverConfig {
        tol: 1e-9,
        max_iter: 2000,
        trace_every: 100,
        ..Default::default()
    };
    let result = solve(&problem, &config, &noisy, None).unwrap();

    let rmse = |a: &Array1<f64>| {
        let d = a - &clean;
        (d.dot(&d) / p as f64).sqrt()
    };
    println!(
        "converged = {} after {} iterations, final ||G|| = {:.3e}",
        result.converged,
        result.iters,
        result.trace.last().unwrap().gmap_norm
    );
    println!("rmse noisy    = {:.4}", rmse(&noisy));
    println!("rmse denoised = {:.4}", rmse(&result.x_final));

    println!("denoised image (values rounded):");
    for r in 0..rows {
        let row: Vec<String> = (0..cols)
            .map(|c| format!("{:4.1}", result.x_final[r * cols + c]))
            .collect();
        println!("  {}", row.join(" "));
    }
}

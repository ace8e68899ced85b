//! Group lasso with overlapping groups, realized as two non-overlapping
//! partitions: the original blocks go to g and a shifted copy to h, so each
//! coordinate feels two group penalties whose blocks straddle each other.
//!
//! Run with: cargo run --example group_lasso_overlap

use ndarray::{Array1, Array2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use triop::prox::prox_group_l1;
use triop::smooth::least_squares;
use triop::{solve, SolverConfig, SplitProblem};

fn blocks(p: usize, size: usize, offset: usize) -> Vec<Vec<usize>> {
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

fn main() {
    let (p, size, offset, lambda) = (24, 6, 3, 0.25);
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    // A blockwise-sparse signal observed with noise (identity design).
    let signal = Array1::from_shape_fn(p, |i| if (i / size) % 2 == 0 { 1.0 } else { 0.0 });
    let noisy = &signal
        + &Array1::from_iter((0..p).map(|_| {
            let v: f64 = StandardNormal.sample(&mut rng);
            0.15 * v
        }));

    let problem = SplitProblem::new(
        least_squares(Array2::eye(p), noisy).unwrap(),
        prox_group_l1(blocks(p, size, 0), p, lambda).unwrap(),
        prox_group_l1(blocks(p, size, offset), p, lambda).unwrap(),
        p,
    );
    let config = SolverConfig {
        tol: 1e-10,
        max_iter: 2000,
        trace_every: 100,
        ..Default::default()
    };
    let result = solve(&problem, &config, &Array1::zeros(p), None).unwrap();
    println!(
        "converged = {} after {} iterations, final ||G|| = {:.3e}",
        result.converged,
        result.iters,
        result.trace.last().unwrap().gmap_norm
    );
    println!("true signal / estimate:");
    for i in 0..p {
        println!("  x[{i:2}]  {:5.2}  {:8.4}", signal[i], result.x_final[i]);
    }
    let active = result.x_final.iter().filter(|v| v.abs() > 1e-6).count();
    println!("{active}/{p} coordinates active after the two group penalties");
}

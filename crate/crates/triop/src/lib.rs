//! Three-operator splitting for composite convex optimization.
//!
//! The solver minimizes `f(x) + g(x) + h(x)` where `f` is convex with an
//! L-Lipschitz gradient and `g`, `h` are convex functions with inexpensive
//! proximal operators. One iteration evaluates the gradient once and each
//! prox once:
//!
//! ```text
//! x  = prox_{gamma g}(y)
//! z  = prox_{gamma h}(2x - y - gamma grad f(x))
//! y+ = y - x + z
//! ```
//!
//! which is `y+ = y - gamma G(y)` for the gradient mapping
//! `G(y) = (x - z)/gamma`. `G` generalizes the gradient: it equals
//! `grad f` when both prox terms vanish and the prox-grad map when one
//! does, and the scheme itself reduces to proximal gradient descent
//! (`g = 0`) or Douglas-Rachford (`f = 0`). Convergence is monitored
//! through `||G||`, which decreases monotonically and obeys an O(1/k)
//! bound for `gamma < 2/L`; the [`diagnostics`] module certifies those
//! inequalities numerically on any trajectory, and [`solve`] can run the
//! checks inline and abort on the first violation.
//!
//! # Example
//!
//! ```
//! use ndarray::{array, Array1};
//! use triop::{prox, smooth, solve, SolverConfig, SplitProblem};
//!
//! // Lasso with an orthogonal design: the solution soft-thresholds b.
//! let problem = SplitProblem::new(
//!     smooth::least_squares(array![[1.0, 0.0], [0.0, 1.0]], array![3.0, 0.2]).unwrap(),
//!     prox::prox_l1(1.0).unwrap(),
//!     prox::prox_zero(),
//!     2,
//! );
//! let config = SolverConfig {
//!     tol: 1e-10,
//!     max_iter: 500,
//!     ..Default::default()
//! };
//! let result = solve(&problem, &config, &Array1::zeros(2), None).unwrap();
//! assert!(result.converged);
//! assert!((result.x_final[0] - 2.0).abs() < 1e-8);
//! assert!(result.x_final[1].abs() < 1e-8);
//! ```
//!
//! The `examples/` directory has one runnable program per capability; the
//! `triop` binary runs TOML-described experiments and writes CSV traces.

mod core;

pub mod diagnostics;
pub mod experiment;
pub mod prox;
pub mod reference;
pub mod smooth;
pub mod solver;

pub use crate::core::{
    resolve_step_size, IterateState, ProxOracle, SmoothOracle, SolverConfig, SplitProblem,
    StepSize, TraceRecord,
};
pub use crate::solver::{
    construct_fixed_point, gradient_mapping, solve, tos_step, SolveResult,
};

use crate::diagnostics::CheckName;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid solver or experiment configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Invalid problem data or arguments.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An oracle produced non-finite values.
    #[error("non-finite values returned by {oracle}")]
    Numerical { oracle: &'static str },

    /// A certified inequality failed during a checked run.
    #[error("{name} inequality violated at iteration {iteration}: residual {residual:e}")]
    InequalityViolation {
        name: CheckName,
        iteration: usize,
        residual: f64,
    },

    /// A supplied reference point is not a fixed point.
    #[error("reference point is not a fixed point: ||G(y*)|| = {gmap_norm:e}")]
    InvalidReference { gmap_norm: f64 },

    /// A reference solver ran out of iterations.
    #[error("no convergence within {0} updates")]
    NoConvergence(usize),

    /// Experiment spec file failed to parse.
    #[error("failed to parse experiment spec: {0}")]
    Spec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

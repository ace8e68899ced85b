//! Shared domain types: oracle traits, problem definition, solver
//! configuration, iterate state and trace records.

use ndarray::Array1;

use crate::{Error, Result};

/// Smooth part of the objective: a convex function with an L-Lipschitz
/// gradient.
///
/// Implementations must return a certified (over-estimated if in doubt)
/// Lipschitz constant from [`lipschitz`](SmoothOracle::lipschitz); the step
/// size bound `gamma < 2/L` and every convergence guarantee depend on it.
pub trait SmoothOracle: Send + Sync {
    /// Function value at `x`.
    fn eval(&self, x: &Array1<f64>) -> f64;
    /// Gradient at `x`.
    fn grad(&self, x: &Array1<f64>) -> Array1<f64>;
    /// Lipschitz constant of the gradient.
    fn lipschitz(&self) -> f64;
}

/// Nonsmooth part of the objective, accessed through its proximal operator.
///
/// `prox(gamma, v)` must return the minimizer of
/// `phi(u) + 1/(2 gamma) * ||u - v||^2`. `eval` is the function value itself
/// and may be `f64::INFINITY` (indicator functions).
pub trait ProxOracle: Send + Sync {
    fn prox(&self, gamma: f64, v: &Array1<f64>) -> Array1<f64>;
    fn eval(&self, v: &Array1<f64>) -> f64;
}

/// A composite problem `min f(x) + g(x) + h(x)` over `R^dim`.
///
/// Whether the problem admits a solution is the caller's responsibility;
/// the solver reports non-convergence rather than assuming one exists.
pub struct SplitProblem {
    f: Box<dyn SmoothOracle>,
    g: Box<dyn ProxOracle>,
    h: Box<dyn ProxOracle>,
    dim: usize,
}

impl SplitProblem {
    pub fn new(
        f: impl SmoothOracle + 'static,
        g: impl ProxOracle + 'static,
        h: impl ProxOracle + 'static,
        dim: usize,
    ) -> Self {
        Self::from_parts(Box::new(f), Box::new(g), Box::new(h), dim)
    }

    pub fn from_parts(
        f: Box<dyn SmoothOracle>,
        g: Box<dyn ProxOracle>,
        h: Box<dyn ProxOracle>,
        dim: usize,
    ) -> Self {
        assert!(dim > 0, "problem dimension must be positive");
        Self { f, g, h, dim }
    }

    pub fn f(&self) -> &dyn SmoothOracle {
        self.f.as_ref()
    }

    pub fn g(&self) -> &dyn ProxOracle {
        self.g.as_ref()
    }

    pub fn h(&self) -> &dyn ProxOracle {
        self.h.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Composite objective `f(x) + g(x) + h(x)`; may be `inf` when an
    /// indicator term is violated.
    pub fn objective(&self, x: &Array1<f64>) -> f64 {
        self.f.eval(x) + self.g.eval(x) + self.h.eval(x)
    }
}

/// Step size selection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepSize {
    /// `4/(3L)`, the maximizer of `gamma^2 (2 - gamma L)` over `(0, 2/L)`,
    /// i.e. the step size with the best known worst-case constant.
    Auto,
    /// Explicit value; must satisfy `gamma < 2/L` whenever `L > 0`.
    Fixed(f64),
}

/// Options for [`solve`](crate::solve).
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub gamma: StepSize,
    /// Iteration budget.
    pub max_iter: usize,
    /// Stop once the gradient-mapping norm drops to this threshold.
    pub tol: f64,
    /// Record a trace row every this many iterations (the first and last
    /// iterations are always recorded).
    pub trace_every: usize,
    /// Run the inequality checks inline and abort on any violation.
    pub check_inequalities: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            gamma: StepSize::Auto,
            max_iter: 1000,
            tol: 1e-8,
            trace_every: 1,
            check_inequalities: false,
        }
    }
}

/// Resolves the configured step size against a Lipschitz constant.
///
/// Rejects `gamma >= 2/L` (the hypothesis of the convergence bound) and the
/// automatic choice when `L = 0`, since `4/(3L)` is undefined there.
pub fn resolve_step_size(config: &SolverConfig, lipschitz: f64) -> Result<f64> {
    match config.gamma {
        StepSize::Fixed(gamma) => {
            if !gamma.is_finite() || gamma <= 0.0 {
                return Err(Error::Config(format!(
                    "step size must be a positive finite number, got {gamma}"
                )));
            }
            if lipschitz > 0.0 && gamma >= 2.0 / lipschitz {
                return Err(Error::Config(format!(
                    "gamma must satisfy gamma < 2/L: gamma = {gamma}, 2/L = {}",
                    2.0 / lipschitz
                )));
            }
            Ok(gamma)
        }
        StepSize::Auto => {
            if lipschitz > 0.0 {
                Ok(4.0 / (3.0 * lipschitz))
            } else {
                Err(Error::Config(
                    "automatic step size needs a positive Lipschitz constant; \
                     set gamma explicitly when L = 0"
                        .to_string(),
                ))
            }
        }
    }
}

/// One frame of the splitting recurrence evaluated at a point `y`:
///
/// ```text
/// x  = prox_{gamma g}(y)
/// z  = prox_{gamma h}(2x - y - gamma grad f(x))
/// y+ = y - x + z
/// ```
#[derive(Clone, Debug)]
pub struct IterateState {
    pub y: Array1<f64>,
    /// First prox point, `prox_{gamma g}(y)`.
    pub x: Array1<f64>,
    /// Second prox point.
    pub z: Array1<f64>,
    /// Next iterate `y - x + z`.
    pub y_next: Array1<f64>,
    /// Gradient mapping `(x - z)/gamma = (y - y_next)/gamma`.
    pub gmap: Array1<f64>,
    /// Gradient of the smooth term at `x`, kept for the inequality checks.
    pub grad_x: Array1<f64>,
}

impl IterateState {
    pub fn gmap_norm(&self) -> f64 {
        self.gmap.dot(&self.gmap).sqrt()
    }
}

/// Per-iteration diagnostics row.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRecord {
    pub iter: usize,
    /// `||G(y^k)||`.
    pub gmap_norm: f64,
    /// Composite objective at `x^k`; `inf` while an indicator term is
    /// violated.
    pub objective: f64,
    /// `||y^k - y*||` when a reference point was supplied.
    pub dist_to_ref: Option<f64>,
    /// `||x - z|| = gamma * gmap_norm`, a finite feasibility surrogate for
    /// runs whose objective is infinite mid-flight.
    pub infeas: f64,
}

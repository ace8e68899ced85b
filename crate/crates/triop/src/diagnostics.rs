//! Numerical certification of the solver's convergence inequalities on
//! concrete trajectories and point pairs.
//!
//! Four checks are provided, each returning an [`InequalityReport`] whose
//! `residual` is the inequality slack (nonnegative means the inequality
//! holds exactly):
//!
//! * master — `<gG(y) - gG(y~), y - y~> >= ||gG(y) - gG(y~)||^2
//!   + g <grad f(x) - grad f(x~), z - z~>` for arbitrary point pairs; with
//!   `f = 0` this is exactly nonexpansiveness of the gradient mapping.
//! * gm_monotone — `||G(y+)||^2 <= ||G(y)||^2 - (1 - gL/2) ||G(y+) - G(y)||^2`.
//! * dist_decrease — `||y+ - y*||^2 <= ||y - y*||^2 - g^2 (1 - gL/2) ||G(y)||^2`
//!   for a fixed point `y*`.
//! * rate_bound — `||G(y^k)||^2 <= 2 ||y^0 - y*||^2 / (g^2 (2 - gL) (k+1))`.
//!
//! A residual passes when it is no smaller than `-1e-9 * scale`, where
//! `scale` is the magnitude of the largest term entering the comparison;
//! the terms span many orders of magnitude across problems, so an absolute
//! tolerance would be either too lax or too strict somewhere.

use std::fmt;

use ndarray::Array1;

use crate::core::{IterateState, SplitProblem, TraceRecord};
use crate::solver::{gradient_mapping, tos_step, FIXED_POINT_TOL};
use crate::{Error, Result};

/// Relative slack allowed before an inequality counts as violated.
pub const RELATIVE_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckName {
    Master,
    GmMonotone,
    DistDecrease,
    RateBound,
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CheckName::Master => "master",
            CheckName::GmMonotone => "gm_monotone",
            CheckName::DistDecrease => "dist_decrease",
            CheckName::RateBound => "rate_bound",
        };
        f.pad(name)
    }
}

/// Outcome of one inequality evaluation.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub name: CheckName,
    /// Iteration index or point-pair id.
    pub location: usize,
    /// Inequality slack; nonnegative up to tolerance means pass.
    pub residual: f64,
    pub passed: bool,
}

pub(crate) fn make_report(
    name: CheckName,
    location: usize,
    residual: f64,
    scale: f64,
) -> InequalityReport {
    InequalityReport {
        name,
        location,
        residual,
        passed: residual >= -RELATIVE_SLACK * scale,
    }
}

/// Residual and scale of the master inequality between two evaluated states.
pub(crate) fn master_terms(a: &IterateState, b: &IterateState, gamma: f64) -> (f64, f64) {
    let dg = gamma * (&a.gmap - &b.gmap);
    let dy = &a.y - &b.y;
    let inner = dg.dot(&dy);
    let sq = dg.dot(&dg);
    let coupling = gamma * (&a.grad_x - &b.grad_x).dot(&(&a.z - &b.z));
    let residual = inner - sq - coupling;
    let scale = 1.0f64.max(inner.abs()).max(sq).max(coupling.abs());
    (residual, scale)
}

/// Residual and scale of the gradient-mapping monotonicity inequality;
/// `b` must be the state evaluated at `a.y_next`.
pub(crate) fn gm_monotone_terms(
    a: &IterateState,
    b: &IterateState,
    gamma: f64,
    lipschitz: f64,
) -> (f64, f64) {
    let ga = a.gmap.dot(&a.gmap);
    let gb = b.gmap.dot(&b.gmap);
    let diff = &b.gmap - &a.gmap;
    let shrink = (1.0 - gamma * lipschitz / 2.0) * diff.dot(&diff);
    let residual = ga - shrink - gb;
    let scale = 1.0f64.max(ga).max(gb).max(shrink.abs());
    (residual, scale)
}

/// Residual and scale of the distance-decrease inequality at `a` relative to
/// a fixed point `y_star`.
pub(crate) fn dist_decrease_terms(
    a: &IterateState,
    y_star: &Array1<f64>,
    gamma: f64,
    lipschitz: f64,
) -> (f64, f64) {
    let before = {
        let d = &a.y - y_star;
        d.dot(&d)
    };
    let after = {
        let d = &a.y_next - y_star;
        d.dot(&d)
    };
    let descent = gamma * gamma * (1.0 - gamma * lipschitz / 2.0) * a.gmap.dot(&a.gmap);
    let residual = before - descent - after;
    let scale = 1.0f64.max(before).max(after).max(descent.abs());
    (residual, scale)
}

/// Residual and scale of the sublinear rate bound at iteration `k`.
pub(crate) fn rate_bound_terms(
    dist0_sq: f64,
    k: usize,
    gmap_norm: f64,
    gamma: f64,
    lipschitz: f64,
) -> (f64, f64) {
    let bound =
        2.0 * dist0_sq / (gamma * gamma * (2.0 - gamma * lipschitz) * (k + 1) as f64);
    let actual = gmap_norm * gmap_norm;
    (bound - actual, 1.0f64.max(bound).max(actual))
}

/// Evaluates the master inequality for a pair of arbitrary points.
pub fn check_master_inequality(
    problem: &SplitProblem,
    gamma: f64,
    y: &Array1<f64>,
    y_tilde: &Array1<f64>,
) -> Result<InequalityReport> {
    let a = tos_step(problem, gamma, y)?;
    let b = tos_step(problem, gamma, y_tilde)?;
    let (residual, scale) = master_terms(&a, &b, gamma);
    Ok(make_report(CheckName::Master, 0, residual, scale))
}

/// Evaluates gradient-mapping monotonicity across the step taken from `y`.
pub fn check_gm_monotone(
    problem: &SplitProblem,
    gamma: f64,
    lipschitz: f64,
    y: &Array1<f64>,
) -> Result<InequalityReport> {
    let a = tos_step(problem, gamma, y)?;
    let b = tos_step(problem, gamma, &a.y_next)?;
    let (residual, scale) = gm_monotone_terms(&a, &b, gamma, lipschitz);
    Ok(make_report(CheckName::GmMonotone, 0, residual, scale))
}

/// Evaluates the distance-decrease inequality at `y` against a reference
/// `y_star`, which must be a numerical fixed point.
pub fn check_distance_decrease(
    problem: &SplitProblem,
    gamma: f64,
    lipschitz: f64,
    y: &Array1<f64>,
    y_star: &Array1<f64>,
) -> Result<InequalityReport> {
    let g_star = gradient_mapping(problem, gamma, y_star)?;
    let g_norm = g_star.dot(&g_star).sqrt();
    if g_norm > FIXED_POINT_TOL {
        return Err(Error::InvalidReference { gmap_norm: g_norm });
    }
    let a = tos_step(problem, gamma, y)?;
    let (residual, scale) = dist_decrease_terms(&a, y_star, gamma, lipschitz);
    Ok(make_report(CheckName::DistDecrease, 0, residual, scale))
}

/// Evaluates the sublinear rate bound at every recorded trace row.
pub fn check_rate_bound(
    trace: &[TraceRecord],
    y0: &Array1<f64>,
    y_star: &Array1<f64>,
    gamma: f64,
    lipschitz: f64,
) -> Result<Vec<InequalityReport>> {
    if lipschitz > 0.0 && gamma >= 2.0 / lipschitz {
        return Err(Error::Config(format!(
            "gamma must satisfy gamma < 2/L: gamma = {gamma}, 2/L = {}",
            2.0 / lipschitz
        )));
    }
    let d0 = {
        let d = y0 - y_star;
        d.dot(&d)
    };
    Ok(trace
        .iter()
        .map(|rec| {
            let (residual, scale) =
                rate_bound_terms(d0, rec.iter, rec.gmap_norm, gamma, lipschitz);
            make_report(CheckName::RateBound, rec.iter, residual, scale)
        })
        .collect())
}

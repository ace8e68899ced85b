//! Independent reference solvers used as ground truth in tests: coordinate
//! descent for the lasso, dense grid search for tiny problems, and
//! standalone proximal-gradient / Douglas-Rachford loops for the reduction
//! equivalence checks.
//!
//! Nothing here calls into the solver module; cross-checks against it would
//! otherwise be circular.

use ndarray::{Array1, Array2};

use crate::core::{ProxOracle, SmoothOracle};
use crate::{Error, Result};

const CD_UPDATE_CAP: usize = 2_000_000;

/// Stationarity residual of the lasso objective `1/2 ||Ax - b||^2 +
/// lambda ||x||_1` at `x`: the largest componentwise distance of the
/// gradient to the subdifferential of the penalty.
pub fn lasso_stationarity_residual(
    a: &Array2<f64>,
    b: &Array1<f64>,
    lambda: f64,
    x: &Array1<f64>,
) -> f64 {
    let grad = a.t().dot(&(a.dot(x) - b));
    grad.iter()
        .zip(x.iter())
        .map(|(&g, &xi)| {
            if xi > 0.0 {
                (g + lambda).abs()
            } else if xi < 0.0 {
                (g - lambda).abs()
            } else {
                (g.abs() - lambda).max(0.0)
            }
        })
        .fold(0.0, f64::max)
}

/// Minimizes `1/2 ||Ax - b||^2 + lambda ||x||_1` by greedy coordinate
/// descent until the stationarity residual drops to `tol`.
pub fn lasso_coordinate_descent(
    a: &Array2<f64>,
    b: &Array1<f64>,
    lambda: f64,
    tol: f64,
) -> Result<Array1<f64>> {
    let p = a.ncols();
    if a.nrows() != b.len() {
        return Err(Error::Invalid(format!(
            "design has {} rows but {} targets",
            a.nrows(),
            b.len()
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    let gram = a.t().dot(a);
    let target = a.t().dot(b);
    for j in 0..p {
        if gram[[j, j]] <= 0.0 {
            return Err(Error::Invalid(format!("column {j} of A is zero")));
        }
    }
    let mut x = Array1::<f64>::zeros(p);
    let mut gram_x = Array1::<f64>::zeros(p);
    for update in 0..CD_UPDATE_CAP {
        // Pick the coordinate with the largest subgradient violation.
        let mut best = 0usize;
        let mut best_violation = 0.0;
        for j in 0..p {
            let g = gram_x[j] - target[j];
            let violation = if x[j] > 0.0 {
                (g + lambda).abs()
            } else if x[j] < 0.0 {
                (g - lambda).abs()
            } else {
                (g.abs() - lambda).max(0.0)
            };
            if violation > best_violation {
                best_violation = violation;
                best = j;
            }
        }
        if best_violation <= tol {
            return Ok(x);
        }
        let quad = gram[[best, best]];
        let linear = target[best] - (gram_x[best] - quad * x[best]);
        let fresh = linear.signum() * (linear.abs() - lambda).max(0.0) / quad;
        let delta = fresh - x[best];
        if delta != 0.0 {
            let column = gram.column(best);
            for j in 0..p {
                gram_x[j] += delta * column[j];
            }
            x[best] = fresh;
        }
        // Recompute the cached product occasionally so rounding drift in the
        // incremental updates cannot stall the stopping test.
        if update % 4096 == 4095 {
            gram_x = gram.dot(&x);
        }
    }
    Err(Error::NoConvergence(CD_UPDATE_CAP))
}

/// Refines a lasso solution by solving the normal equations restricted to
/// its support. The candidate is kept only if it improves the stationarity
/// residual, so the output never degrades the coordinate-descent answer.
pub fn polish_lasso_solution(
    a: &Array2<f64>,
    b: &Array1<f64>,
    lambda: f64,
    x: &Array1<f64>,
) -> Array1<f64> {
    let support: Vec<usize> = (0..x.len()).filter(|&j| x[j] != 0.0).collect();
    if support.is_empty() {
        return x.clone();
    }
    let s = support.len();
    let mut gram = Array2::<f64>::zeros((s, s));
    let mut rhs = Array1::<f64>::zeros(s);
    let columns: Vec<_> = support.iter().map(|&j| a.column(j)).collect();
    for (i, ci) in columns.iter().enumerate() {
        for (j, cj) in columns.iter().enumerate() {
            gram[[i, j]] = ci.dot(cj);
        }
        rhs[i] = ci.dot(b) - lambda * x[support[i]].signum();
    }
    let Some(solution) = solve_dense(gram, rhs) else {
        return x.clone();
    };
    let mut candidate = Array1::<f64>::zeros(x.len());
    for (i, &j) in support.iter().enumerate() {
        candidate[j] = solution[i];
    }
    let before = lasso_stationarity_residual(a, b, lambda, x);
    let after = lasso_stationarity_residual(a, b, lambda, &candidate);
    if after <= before {
        candidate
    } else {
        x.clone()
    }
}

/// Dense LU solve with partial pivoting; `None` when the matrix is
/// numerically singular.
fn solve_dense(mut m: Array2<f64>, mut rhs: Array1<f64>) -> Option<Array1<f64>> {
    let n = rhs.len();
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if m[[row, col]].abs() > m[[pivot, col]].abs() {
                pivot = row;
            }
        }
        if m[[pivot, col]].abs() < 1e-300 {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                m.swap([pivot, j], [col, j]);
            }
            rhs.swap(pivot, col);
        }
        for row in col + 1..n {
            let factor = m[[row, col]] / m[[col, col]];
            for j in col..n {
                m[[row, j]] -= factor * m[[col, j]];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = Array1::<f64>::zeros(n);
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for j in row + 1..n {
            acc -= m[[row, j]] * x[j];
        }
        x[row] = acc / m[[row, row]];
    }
    Some(x)
}

/// Exhaustive scan of a box grid in up to three dimensions; ties resolve to
/// the lexicographically first grid point.
pub fn grid_minimize(
    objective: &dyn Fn(&Array1<f64>) -> f64,
    lo: &[f64],
    hi: &[f64],
    step: f64,
) -> Result<Array1<f64>> {
    let p = lo.len();
    if p == 0 || p > 3 || hi.len() != p {
        return Err(Error::Invalid(format!(
            "grid search supports 1 to 3 dimensions, got lo: {p}, hi: {}",
            hi.len()
        )));
    }
    if step.is_nan() || step <= 0.0 {
        return Err(Error::Invalid("grid step must be positive".into()));
    }
    let mut counts = [1usize; 3];
    for i in 0..p {
        if !lo[i].is_finite() || !hi[i].is_finite() || hi[i] < lo[i] {
            return Err(Error::Invalid(format!(
                "grid box must be finite with lo <= hi, got [{}, {}]",
                lo[i], hi[i]
            )));
        }
        counts[i] = ((hi[i] - lo[i]) / step).floor() as usize + 1;
    }
    let mut best_value = f64::INFINITY;
    let mut best_point = Array1::from_iter(lo.iter().copied());
    let mut point = Array1::<f64>::zeros(p);
    for i in 0..counts[0] {
        point[0] = lo[0] + i as f64 * step;
        for j in 0..counts[1] {
            if p >= 2 {
                point[1] = lo[1] + j as f64 * step;
            }
            for k in 0..counts[2] {
                if p >= 3 {
                    point[2] = lo[2] + k as f64 * step;
                }
                let value = objective(&point);
                if value < best_value {
                    best_value = value;
                    best_point = point.clone();
                }
            }
        }
    }
    Ok(best_point)
}

/// Plain proximal-gradient loop `x+ = prox_{gamma h}(x - gamma grad f(x))`,
/// returning the full iterate list (starting at `x0`).
pub fn proximal_gradient_reference(
    f: &dyn SmoothOracle,
    h: &dyn ProxOracle,
    gamma: f64,
    x0: &Array1<f64>,
    iters: usize,
) -> Result<Vec<Array1<f64>>> {
    let mut out = Vec::with_capacity(iters + 1);
    out.push(x0.clone());
    let mut x = x0.clone();
    for _ in 0..iters {
        let grad = f.grad(&x);
        if grad.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical { oracle: "f.grad" });
        }
        let x_next = h.prox(gamma, &(&x - gamma * &grad));
        if x_next.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical { oracle: "h.prox" });
        }
        x = x_next;
        out.push(x.clone());
    }
    Ok(out)
}

/// Plain Douglas-Rachford loop
/// `y+ = y - prox_{gamma g}(y) + prox_{gamma h}(2 prox_{gamma g}(y) - y)`,
/// returning the full iterate list (starting at `y0`).
pub fn douglas_rachford_reference(
    g: &dyn ProxOracle,
    h: &dyn ProxOracle,
    gamma: f64,
    y0: &Array1<f64>,
    iters: usize,
) -> Result<Vec<Array1<f64>>> {
    let mut out = Vec::with_capacity(iters + 1);
    out.push(y0.clone());
    let mut y = y0.clone();
    for _ in 0..iters {
        let x = g.prox(gamma, &y);
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical { oracle: "g.prox" });
        }
        let z = h.prox(gamma, &(2.0 * &x - &y));
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical { oracle: "h.prox" });
        }
        y = &y - &x + &z;
        out.push(y.clone());
    }
    Ok(out)
}

//! Catalog of proximal operators and projections.
//!
//! Every constructor returns a [`ProxOracle`]: the identity (zero function),
//! soft thresholding, block soft thresholding over a partition, box and
//! simplex projections, and exact 1-D total variation. Two adapters assemble
//! 2-D total variation from the 1-D routine by running it along the rows or
//! the columns of an image stored row-major.
//!
//! All operators are immutable after construction and safe to evaluate
//! concurrently.

use ndarray::Array1;

use crate::core::ProxOracle;
use crate::{Error, Result};

/// The zero function; its prox is the identity for every step size.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroProx;

pub fn prox_zero() -> ZeroProx {
    ZeroProx
}

impl ProxOracle for ZeroProx {
    fn prox(&self, _gamma: f64, v: &Array1<f64>) -> Array1<f64> {
        v.clone()
    }

    fn eval(&self, _v: &Array1<f64>) -> f64 {
        0.0
    }
}

/// `lambda * ||v||_1`; prox is componentwise soft thresholding.
#[derive(Clone, Copy, Debug)]
pub struct L1 {
    lambda: f64,
}

pub fn prox_l1(lambda: f64) -> Result<L1> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::Invalid(format!(
            "l1 weight must be nonnegative, got {lambda}"
        )));
    }
    Ok(L1 { lambda })
}

fn soft_threshold(v: f64, t: f64) -> f64 {
    v.signum() * (v.abs() - t).max(0.0)
}

impl ProxOracle for L1 {
    fn prox(&self, gamma: f64, v: &Array1<f64>) -> Array1<f64> {
        let t = gamma * self.lambda;
        v.mapv(|vi| soft_threshold(vi, t))
    }

    fn eval(&self, v: &Array1<f64>) -> f64 {
        self.lambda * v.iter().map(|vi| vi.abs()).sum::<f64>()
    }
}

/// `lambda * sum_b ||v_b||_2` over a partition of the coordinates; prox is
/// blockwise shrinkage. A block with zero norm shrinks to zero, the unique
/// prox value there.
#[derive(Clone, Debug)]
pub struct GroupL1 {
    groups: Vec<Vec<usize>>,
    lambda: f64,
}

/// Builds the group penalty. `groups` must partition `0..dim`: overlapping,
/// incomplete or out-of-range groups are rejected.
pub fn prox_group_l1(groups: Vec<Vec<usize>>, dim: usize, lambda: f64) -> Result<GroupL1> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::Invalid(format!(
            "group weight must be nonnegative, got {lambda}"
        )));
    }
    let mut seen = vec![false; dim];
    for group in &groups {
        if group.is_empty() {
            return Err(Error::Invalid("empty group in partition".to_string()));
        }
        for &i in group {
            if i >= dim {
                return Err(Error::Invalid(format!(
                    "group index {i} out of range for dimension {dim}"
                )));
            }
            if seen[i] {
                return Err(Error::Invalid(format!(
                    "index {i} appears in more than one group"
                )));
            }
            seen[i] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|covered| !covered) {
        return Err(Error::Invalid(format!(
            "index {missing} is not covered by any group"
        )));
    }
    Ok(GroupL1 { groups, lambda })
}

impl ProxOracle for GroupL1 {
    fn prox(&self, gamma: f64, v: &Array1<f64>) -> Array1<f64> {
        let t = gamma * self.lambda;
        let mut out = v.clone();
        for group in &self.groups {
            let norm = group.iter().map(|&i| v[i] * v[i]).sum::<f64>().sqrt();
            let factor = if norm > 0.0 {
                (1.0 - t / norm).max(0.0)
            } else {
                0.0
            };
            for &i in group {
                out[i] *= factor;
            }
        }
        out
    }

    fn eval(&self, v: &Array1<f64>) -> f64 {
        self.lambda
            * self
                .groups
                .iter()
                .map(|group| group.iter().map(|&i| v[i] * v[i]).sum::<f64>().sqrt())
                .sum::<f64>()
    }
}

/// Indicator of the box `[lo, hi]`; prox is clamping, for every step size.
#[derive(Clone, Debug)]
pub struct BoxProjection {
    lo: Array1<f64>,
    hi: Array1<f64>,
}

pub fn project_box(lo: Array1<f64>, hi: Array1<f64>) -> Result<BoxProjection> {
    if lo.len() != hi.len() {
        return Err(Error::Invalid(format!(
            "box bounds have mismatched lengths {} and {}",
            lo.len(),
            hi.len()
        )));
    }
    for (l, u) in lo.iter().zip(hi.iter()) {
        if l.is_nan() || u.is_nan() || l > u {
            return Err(Error::Invalid(format!(
                "box requires lo <= hi componentwise, got [{l}, {u}]"
            )));
        }
    }
    Ok(BoxProjection { lo, hi })
}

/// Box with the same scalar bounds in every coordinate.
pub fn project_box_scalar(lo: f64, hi: f64, dim: usize) -> Result<BoxProjection> {
    project_box(Array1::from_elem(dim, lo), Array1::from_elem(dim, hi))
}

impl BoxProjection {
    pub fn contains(&self, v: &Array1<f64>) -> bool {
        v.iter()
            .zip(self.lo.iter().zip(self.hi.iter()))
            .all(|(x, (l, u))| *x >= *l && *x <= *u)
    }
}

impl ProxOracle for BoxProjection {
    fn prox(&self, _gamma: f64, v: &Array1<f64>) -> Array1<f64> {
        let mut out = v.clone();
        for (x, (l, u)) in out.iter_mut().zip(self.lo.iter().zip(self.hi.iter())) {
            *x = x.clamp(*l, *u);
        }
        out
    }

    fn eval(&self, v: &Array1<f64>) -> f64 {
        if self.contains(v) {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Indicator of the probability simplex `{u : u >= 0, sum u = 1}`; prox is
/// the Euclidean projection by sort and threshold.
///
/// The simplex has empty interior, so `eval` tests feasibility to a small
/// absolute tolerance instead of exact equality; projected points always
/// count as feasible.
#[derive(Clone, Copy, Debug, Default)]
pub struct SimplexProjection;

pub fn project_simplex() -> SimplexProjection {
    SimplexProjection
}

impl ProxOracle for SimplexProjection {
    fn prox(&self, _gamma: f64, v: &Array1<f64>) -> Array1<f64> {
        let n = v.len();
        // Sort indices by value, descending; ties keep original order.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| v[j].partial_cmp(&v[i]).unwrap().then(i.cmp(&j)));
        let mut cumsum = 0.0;
        let mut tau = 0.0;
        for (rank, &i) in order.iter().enumerate() {
            cumsum += v[i];
            let candidate = (cumsum - 1.0) / (rank + 1) as f64;
            if v[i] - candidate > 0.0 {
                tau = candidate;
            } else {
                break;
            }
        }
        v.mapv(|vi| (vi - tau).max(0.0))
    }

    fn eval(&self, v: &Array1<f64>) -> f64 {
        let sum: f64 = v.iter().sum();
        let feasible = (sum - 1.0).abs() <= 1e-9 && v.iter().all(|&vi| vi >= -1e-12);
        if feasible {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// `lambda * sum_i |v_{i+1} - v_i|`, the anisotropic 1-D total variation;
/// prox is computed exactly by the direct taut-string scan.
#[derive(Clone, Copy, Debug)]
pub struct Tv1d {
    lambda: f64,
}

pub fn prox_tv1d(lambda: f64) -> Result<Tv1d> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::Invalid(format!(
            "tv weight must be nonnegative, got {lambda}"
        )));
    }
    Ok(Tv1d { lambda })
}

impl ProxOracle for Tv1d {
    fn prox(&self, gamma: f64, v: &Array1<f64>) -> Array1<f64> {
        let input = v.as_slice().expect("contiguous input");
        let mut out = vec![0.0; v.len()];
        tv1d_denoise(input, gamma * self.lambda, &mut out);
        Array1::from_vec(out)
    }

    fn eval(&self, v: &Array1<f64>) -> f64 {
        self.lambda * tv_seminorm(v.as_slice().expect("contiguous input"))
    }
}

pub(crate) fn tv_seminorm(v: &[f64]) -> f64 {
    v.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

/// Exact minimizer of `1/2 ||u - y||^2 + t * sum |u_{i+1} - u_i|` by the
/// direct non-iterative taut-string scan. Runs in O(n) time and keeps two
/// candidate string levels (`vmin`, `vmax`) with running slack (`umin`,
/// `umax`); a segment is emitted whenever the tube forces a jump.
pub(crate) fn tv1d_denoise(y: &[f64], t: f64, x: &mut [f64]) {
    let n = y.len();
    assert_eq!(n, x.len());
    if n == 0 {
        return;
    }
    if t <= 0.0 || n == 1 {
        x.copy_from_slice(y);
        return;
    }
    let mut k = 0usize;
    let mut k0 = 0usize;
    let mut kminus = 0usize;
    let mut kplus = 0usize;
    let mut umin = t;
    let mut umax = -t;
    let mut vmin = y[0] - t;
    let mut vmax = y[0] + t;
    loop {
        while k == n - 1 {
            if umin < 0.0 {
                // The lower string breaks: freeze its segment and restart
                // just after the last point it touched.
                loop {
                    x[k0] = vmin;
                    k0 += 1;
                    if k0 > kminus {
                        break;
                    }
                }
                k = k0;
                kminus = k;
                vmin = y[kminus];
                umin = t;
                umax = vmin + umin - vmax;
            } else if umax > 0.0 {
                // The upper string breaks symmetrically.
                loop {
                    x[k0] = vmax;
                    k0 += 1;
                    if k0 > kplus {
                        break;
                    }
                }
                k = k0;
                kplus = k;
                vmax = y[kplus];
                umax = -t;
                umin = vmax + umax - vmin;
            } else {
                // Both strings reach the end: the tail is one flat segment.
                vmin += umin / (k - k0 + 1) as f64;
                loop {
                    x[k0] = vmin;
                    k0 += 1;
                    if k0 > k {
                        break;
                    }
                }
                return;
            }
        }
        if y[k + 1] + umin < vmin - t {
            // Next sample is unreachable from below: emit a negative jump.
            loop {
                x[k0] = vmin;
                k0 += 1;
                if k0 > kminus {
                    break;
                }
            }
            k = k0;
            kminus = k;
            kplus = k;
            vmin = y[k];
            vmax = vmin + 2.0 * t;
            umin = t;
            umax = -t;
        } else if y[k + 1] + umax > vmax + t {
            // Unreachable from above: emit a positive jump.
            loop {
                x[k0] = vmax;
                k0 += 1;
                if k0 > kplus {
                    break;
                }
            }
            k = k0;
            kminus = k;
            kplus = k;
            vmax = y[k];
            vmin = vmax - 2.0 * t;
            umin = t;
            umax = -t;
        } else {
            // The segment extends; re-tighten the strings when the slack
            // leaves the tube.
            k += 1;
            umin += y[k] - vmin;
            umax += y[k] - vmax;
            if umin >= t {
                vmin += (umin - t) / (k - k0 + 1) as f64;
                umin = t;
                kminus = k;
            }
            if umax <= -t {
                vmax += (umax + t) / (k - k0 + 1) as f64;
                umax = -t;
                kplus = k;
            }
        }
    }
}

/// Total variation applied to each row of a `rows x cols` image stored
/// row-major in the vector; one half of the 2-D total variation split.
#[derive(Clone, Debug)]
pub struct TvByRows {
    rows: usize,
    cols: usize,
    lambda: f64,
}

pub fn prox_tv_rows(rows: usize, cols: usize, lambda: f64) -> Result<TvByRows> {
    check_image_shape(rows, cols, lambda)?;
    Ok(TvByRows { rows, cols, lambda })
}

/// Total variation applied to each column; the other half of the 2-D split.
#[derive(Clone, Debug)]
pub struct TvByCols {
    rows: usize,
    cols: usize,
    lambda: f64,
}

pub fn prox_tv_cols(rows: usize, cols: usize, lambda: f64) -> Result<TvByCols> {
    check_image_shape(rows, cols, lambda)?;
    Ok(TvByCols { rows, cols, lambda })
}

fn check_image_shape(rows: usize, cols: usize, lambda: f64) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::Invalid(format!(
            "image shape must be positive, got {rows} x {cols}"
        )));
    }
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::Invalid(format!(
            "tv weight must be nonnegative, got {lambda}"
        )));
    }
    Ok(())
}

impl ProxOracle for TvByRows {
    fn prox(&self, gamma: f64, v: &Array1<f64>) -> Array1<f64> {
        assert_eq!(v.len(), self.rows * self.cols);
        let t = gamma * self.lambda;
        let input = v.as_slice().expect("contiguous input");
        let mut out = vec![0.0; v.len()];
        for r in 0..self.rows {
            let span = r * self.cols..(r + 1) * self.cols;
            tv1d_denoise(&input[span.clone()], t, &mut out[span]);
        }
        Array1::from_vec(out)
    }

    fn eval(&self, v: &Array1<f64>) -> f64 {
        assert_eq!(v.len(), self.rows * self.cols);
        let input = v.as_slice().expect("contiguous input");
        self.lambda
            * (0..self.rows)
                .map(|r| tv_seminorm(&input[r * self.cols..(r + 1) * self.cols]))
                .sum::<f64>()
    }
}

impl ProxOracle for TvByCols {
    fn prox(&self, gamma: f64, v: &Array1<f64>) -> Array1<f64> {
        assert_eq!(v.len(), self.rows * self.cols);
        let t = gamma * self.lambda;
        let mut out = v.clone();
        let mut column = vec![0.0; self.rows];
        let mut denoised = vec![0.0; self.rows];
        for c in 0..self.cols {
            for r in 0..self.rows {
                column[r] = v[r * self.cols + c];
            }
            tv1d_denoise(&column, t, &mut denoised);
            for r in 0..self.rows {
                out[r * self.cols + c] = denoised[r];
            }
        }
        out
    }

    fn eval(&self, v: &Array1<f64>) -> f64 {
        assert_eq!(v.len(), self.rows * self.cols);
        let mut column = vec![0.0; self.rows];
        let mut total = 0.0;
        for c in 0..self.cols {
            for r in 0..self.rows {
                column[r] = v[r * self.cols + c];
            }
            total += tv_seminorm(&column);
        }
        self.lambda * total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use proptest::prelude::*;

    fn assert_close(a: &Array1<f64>, b: &Array1<f64>, tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).abs() <= tol, "{a} vs {b}");
        }
    }

    #[test]
    fn zero_prox_is_identity() {
        let op = prox_zero();
        let v = array![3.0, -2.0];
        assert_eq!(op.prox(1.0, &v), v);
        assert_eq!(op.prox(0.01, &array![0.0]), array![0.0]);
        assert_eq!(op.eval(&array![5.0, 5.0]), 0.0);
    }

    #[test]
    fn l1_soft_thresholds() {
        let op = prox_l1(1.0).unwrap();
        assert_close(
            &op.prox(1.0, &array![2.0, -0.5, 0.0]),
            &array![1.0, 0.0, 0.0],
            1e-15,
        );
        let op = prox_l1(2.0).unwrap();
        assert_close(&op.prox(0.5, &array![1.5]), &array![0.5], 1e-15);
        assert!((op.eval(&array![1.5, -2.0]) - 7.0).abs() < 1e-15);
    }

    #[test]
    fn l1_with_zero_weight_is_identity() {
        let op = prox_l1(0.0).unwrap();
        let v = array![2.0, -0.5, 0.0];
        assert_eq!(op.prox(3.0, &v), v);
    }

    #[test]
    fn l1_rejects_negative_weight() {
        assert!(prox_l1(-1.0).is_err());
    }

    #[test]
    fn group_shrinkage_matches_block_formula() {
        let op = prox_group_l1(vec![vec![0, 1]], 2, 1.0).unwrap();
        // ||(3, 4)|| = 5, factor 1 - 1/5.
        assert_close(&op.prox(1.0, &array![3.0, 4.0]), &array![2.4, 3.2], 1e-15);
        assert!((op.eval(&array![3.0, 4.0]) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn group_shrinkage_keeps_zero_blocks_zero() {
        let op = prox_group_l1(vec![vec![0, 1], vec![2]], 3, 1.0).unwrap();
        let out = op.prox(1.0, &array![0.0, 0.0, 5.0]);
        assert_eq!(out[0], 0.0);
        assert_eq!(out[1], 0.0);
        assert!((out[2] - 4.0).abs() < 1e-15);
    }

    #[test]
    fn group_with_zero_weight_is_identity() {
        let op = prox_group_l1(vec![vec![0], vec![1]], 2, 0.0).unwrap();
        let v = array![3.0, -4.0];
        assert_eq!(op.prox(2.0, &v), v);
    }

    #[test]
    fn group_partition_is_validated() {
        assert!(prox_group_l1(vec![vec![0], vec![0, 1]], 2, 1.0).is_err());
        assert!(prox_group_l1(vec![vec![0]], 2, 1.0).is_err());
        assert!(prox_group_l1(vec![vec![0, 2]], 2, 1.0).is_err());
        assert!(prox_group_l1(vec![vec![0], vec![]], 1, 1.0).is_err());
    }

    #[test]
    fn box_projection_clamps() {
        let op = project_box_scalar(0.0, 1.0, 3).unwrap();
        assert_close(
            &op.prox(1.0, &array![-0.5, 2.0, 0.3]),
            &array![0.0, 1.0, 0.3],
            1e-15,
        );
        let feasible = array![0.2, 0.9, 0.0];
        assert_eq!(op.prox(0.5, &feasible), feasible);
        assert_eq!(op.eval(&feasible), 0.0);
        let op1 = project_box_scalar(0.0, 1.0, 1).unwrap();
        assert_eq!(op1.eval(&array![2.0]), f64::INFINITY);
    }

    #[test]
    fn box_rejects_inverted_bounds() {
        assert!(project_box(array![1.0], array![0.0]).is_err());
        assert!(project_box(array![0.0, 0.0], array![1.0]).is_err());
    }

    #[test]
    fn simplex_projection_examples() {
        let op = project_simplex();
        let on = array![0.2, 0.8];
        assert_close(&op.prox(1.0, &on), &on, 1e-15);
        assert_close(&op.prox(1.0, &array![10.0, 0.0]), &array![1.0, 0.0], 1e-15);
        assert_close(
            &op.prox(1.0, &array![0.4, 0.4]),
            &array![0.5, 0.5],
            1e-15,
        );
        assert_eq!(op.eval(&array![0.5, 0.5]), 0.0);
        assert_eq!(op.eval(&array![0.5, 0.1]), f64::INFINITY);
    }

    // Independent check of the sort-and-threshold result: dense scan of the
    // 1-simplex {(s, 1-s)}.
    #[test]
    fn simplex_projection_matches_segment_scan() {
        let op = project_simplex();
        for v in [
            array![0.4, 0.4],
            array![1.3, -0.2],
            array![-2.0, -3.0],
            array![0.9, 0.8],
        ] {
            let projected = op.prox(1.0, &v);
            let mut best = (f64::INFINITY, 0.0);
            for i in 0..=100_000 {
                let s = i as f64 / 100_000.0;
                let d = (s - v[0]).powi(2) + (1.0 - s - v[1]).powi(2);
                if d < best.0 {
                    best = (d, s);
                }
            }
            assert!((projected[0] - best.1).abs() <= 2e-5, "{v}");
            assert!((projected[1] - (1.0 - best.1)).abs() <= 2e-5, "{v}");
        }
    }

    #[test]
    fn tv_keeps_constant_signals() {
        for lambda in [0.1, 1.0, 50.0] {
            let op = prox_tv1d(lambda).unwrap();
            let v = array![2.5, 2.5, 2.5];
            assert_close(&op.prox(1.0, &v), &v, 1e-12);
        }
    }

    #[test]
    fn tv_two_point_closed_form() {
        // With t = gamma * lambda, the two-point solution moves each end
        // toward the other by t until they meet at the mean.
        let op = prox_tv1d(1.0).unwrap();
        assert_close(&op.prox(0.5, &array![0.0, 2.0]), &array![0.5, 1.5], 1e-12);
        // t = 1 reaches the mean: the grid scan in
        // `tv_matches_two_dimensional_grid` pins the same value.
        assert_close(&op.prox(1.0, &array![0.0, 2.0]), &array![1.0, 1.0], 1e-12);
    }

    #[test]
    fn tv_flattens_short_signals_under_large_weight() {
        // For a handful of samples, a weight at the signal range flattens
        // the output to the mean.
        let op = prox_tv1d(12.0).unwrap();
        let v = array![1.0, 9.0, 4.0];
        let mean = v.sum() / 3.0;
        let out = op.prox(1.0, &v);
        for o in out.iter() {
            assert!((o - mean).abs() < 1e-12);
        }
    }

    #[test]
    fn tv_eval_sums_absolute_jumps() {
        let op = prox_tv1d(2.0).unwrap();
        assert!((op.eval(&array![0.0, 2.0, -1.0]) - 10.0).abs() < 1e-15);
    }

    #[test]
    fn tv_matches_two_dimensional_grid() {
        let op = prox_tv1d(1.0).unwrap();
        for (gamma, v) in [(1.0, array![0.0, 2.0]), (0.5, array![1.0, -1.0])] {
            let out = op.prox(gamma, &v);
            let t = gamma;
            let mut best = (f64::INFINITY, 0.0, 0.0);
            for i in 0..=4000 {
                for j in 0..=4000 {
                    let u0 = -2.0 + i as f64 * 1e-3;
                    let u1 = -2.0 + j as f64 * 1e-3;
                    let obj = 0.5 * ((u0 - v[0]).powi(2) + (u1 - v[1]).powi(2))
                        + t * (u1 - u0).abs();
                    if obj < best.0 {
                        best = (obj, u0, u1);
                    }
                }
            }
            assert!((out[0] - best.1).abs() <= 2e-3);
            assert!((out[1] - best.2).abs() <= 2e-3);
        }
    }

    // Subgradient certificate for the TV prox: u solves the problem iff the
    // running sums w_i = sum_{j<=i} (u_j - y_j) satisfy |w_i| <= t, close at
    // zero, and sit at +-t wherever u jumps. Returns the largest violation.
    fn tv_optimality_violation(y: &[f64], t: f64, u: &[f64]) -> f64 {
        let n = y.len();
        let mut w = 0.0;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            w += u[i] - y[i];
            if i + 1 < n {
                worst = worst.max(w.abs() - t);
                if u[i + 1] > u[i] {
                    worst = worst.max((w - t).abs());
                } else if u[i + 1] < u[i] {
                    worst = worst.max((w + t).abs());
                }
            } else {
                worst = worst.max(w.abs());
            }
        }
        worst
    }

    #[test]
    fn tv_satisfies_optimality_certificate_on_fixed_cases() {
        let cases: Vec<(Vec<f64>, f64)> = vec![
            (vec![0.0, 10.0], 1.0),
            (vec![10.0, 0.0], 1.0),
            (vec![0.0, 10.0, 0.0], 1.0),
            (vec![0.0, 0.0, 10.0], 1.0),
            (vec![0.0, 3.0, 6.0, 9.0, 12.0], 1.0),
            (vec![12.0, 9.0, 6.0, 3.0, 0.0], 1.0),
            (vec![1.0, -1.0, 1.0, -1.0, 1.0], 0.4),
            (vec![5.0], 3.0),
            (vec![0.0, 0.0, 10.0, 10.0], 10.0),
        ];
        for (y, t) in cases {
            let mut x = vec![0.0; y.len()];
            tv1d_denoise(&y, t, &mut x);
            let scale = 1.0 + y.iter().fold(0.0f64, |m, v| m.max(v.abs())) + t;
            assert!(
                tv_optimality_violation(&y, t, &x) <= 1e-9 * scale,
                "y = {y:?}, t = {t}, x = {x:?}"
            );
        }
    }

    proptest! {
        #[test]
        fn tv_prox_is_optimal(
            y in prop::collection::vec(-10.0f64..10.0, 1..40),
            t in 0.0f64..5.0,
        ) {
            let mut x = vec![0.0; y.len()];
            tv1d_denoise(&y, t, &mut x);
            let scale = 1.0 + y.iter().fold(0.0f64, |m, v| m.max(v.abs())) + t;
            prop_assert!(tv_optimality_violation(&y, t, &x) <= 1e-9 * scale);
        }

        // Definition of a (firmly) nonexpansive operator, checked for every
        // catalog member: <T(v) - T(w), v - w> >= ||T(v) - T(w)||^2.
        #[test]
        fn catalog_is_firmly_nonexpansive(
            seed_v in prop::collection::vec(-5.0f64..5.0, 6),
            seed_w in prop::collection::vec(-5.0f64..5.0, 6),
            gamma in 0.05f64..5.0,
        ) {
            let v = Array1::from_vec(seed_v);
            let w = Array1::from_vec(seed_w);
            let ops: Vec<Box<dyn ProxOracle>> = vec![
                Box::new(prox_zero()),
                Box::new(prox_l1(0.7).unwrap()),
                Box::new(prox_group_l1(vec![vec![0, 1, 2], vec![3, 4, 5]], 6, 0.9).unwrap()),
                Box::new(project_box_scalar(-1.0, 2.0, 6).unwrap()),
                Box::new(project_simplex()),
                Box::new(prox_tv1d(0.8).unwrap()),
                Box::new(prox_tv_rows(2, 3, 0.6).unwrap()),
                Box::new(prox_tv_cols(2, 3, 0.6).unwrap()),
            ];
            for op in &ops {
                let tv = op.prox(gamma, &v);
                let tw = op.prox(gamma, &w);
                let dt = &tv - &tw;
                let dv = &v - &w;
                let residual = dt.dot(&dv) - dt.dot(&dt);
                prop_assert!(residual >= -1e-10 * (1.0 + dt.dot(&dt)));
            }
        }

        #[test]
        fn projections_are_idempotent(
            seed_v in prop::collection::vec(-5.0f64..5.0, 4),
            gamma in 0.05f64..5.0,
        ) {
            let v = Array1::from_vec(seed_v);
            let ops: Vec<Box<dyn ProxOracle>> = vec![
                Box::new(project_box_scalar(-0.5, 1.5, 4).unwrap()),
                Box::new(project_simplex()),
            ];
            for op in &ops {
                let once = op.prox(gamma, &v);
                let twice = op.prox(gamma, &once);
                for (a, b) in once.iter().zip(twice.iter()) {
                    prop_assert!((a - b).abs() <= 1e-12);
                }
            }
        }
    }
}

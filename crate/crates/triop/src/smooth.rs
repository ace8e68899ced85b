//! Differentiable losses with certified Lipschitz constants.
//!
//! Each constructor estimates the gradient's Lipschitz constant by power
//! iteration on the Gram matrix and inflates it by a small safety factor, so
//! `lipschitz()` is an over-estimate rather than an under-estimate: the step
//! size bound `gamma < 2/L` stays valid.

use ndarray::{Array1, Array2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::core::SmoothOracle;
use crate::{Error, Result};

const LIPSCHITZ_INFLATION: f64 = 1.0 + 1e-6;
const POWER_REL_TOL: f64 = 1e-9;
const POWER_MAX_ITER: usize = 10_000;
const POWER_SEED: u64 = 0x5eed;

/// Largest squared singular value of `a`, by power iteration on `AᵀA` with a
/// deterministic start vector.
pub(crate) fn spectral_norm_sq(a: &Array2<f64>) -> f64 {
    power_iteration(a, POWER_REL_TOL, POWER_MAX_ITER)
}

pub(crate) fn power_iteration(a: &Array2<f64>, rel_tol: f64, max_iter: usize) -> f64 {
    let p = a.ncols();
    let mut rng = ChaCha8Rng::seed_from_u64(POWER_SEED);
    let mut v: Array1<f64> = Array1::from_iter((0..p).map(|_| StandardNormal.sample(&mut rng)));
    let norm = v.dot(&v).sqrt();
    if norm == 0.0 {
        return 0.0;
    }
    v /= norm;
    let mut eigenvalue = 0.0;
    for _ in 0..max_iter {
        let w = a.t().dot(&a.dot(&v));
        let next = v.dot(&w);
        let w_norm = w.dot(&w).sqrt();
        if w_norm == 0.0 {
            return 0.0;
        }
        v = w / w_norm;
        if (next - eigenvalue).abs() <= rel_tol * next.abs().max(f64::MIN_POSITIVE) {
            return next;
        }
        eigenvalue = next;
    }
    eigenvalue
}

fn check_design(a: &Array2<f64>, rows: usize, what: &str) -> Result<()> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Err(Error::Invalid(format!(
            "{what} needs a nonempty design matrix, got {} x {}",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.nrows() != rows {
        return Err(Error::Invalid(format!(
            "{what} dimension mismatch: {} matrix rows vs {rows} observations",
            a.nrows()
        )));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid(format!("{what} has non-finite entries")));
    }
    Ok(())
}

/// `f(x) = 1/2 ||Ax - b||^2` with `L = sigma_max(A)^2`.
pub struct LeastSquares {
    a: Array2<f64>,
    b: Array1<f64>,
    lipschitz: f64,
}

pub fn least_squares(a: Array2<f64>, b: Array1<f64>) -> Result<LeastSquares> {
    check_design(&a, b.len(), "least squares")?;
    if b.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("least squares has non-finite targets".into()));
    }
    let lipschitz = spectral_norm_sq(&a) * LIPSCHITZ_INFLATION;
    Ok(LeastSquares { a, b, lipschitz })
}

impl SmoothOracle for LeastSquares {
    fn eval(&self, x: &Array1<f64>) -> f64 {
        let r = self.a.dot(x) - &self.b;
        0.5 * r.dot(&r)
    }

    fn grad(&self, x: &Array1<f64>) -> Array1<f64> {
        let r = self.a.dot(x) - &self.b;
        self.a.t().dot(&r)
    }

    fn lipschitz(&self) -> f64 {
        self.lipschitz
    }
}

/// `f(x) = sum_i log(1 + exp(-y_i a_i' x))` for labels in {-1, +1}, with
/// `L = sigma_max(A)^2 / 4`.
pub struct Logistic {
    a: Array2<f64>,
    labels: Array1<f64>,
    lipschitz: f64,
}

pub fn logistic(a: Array2<f64>, labels: Array1<f64>) -> Result<Logistic> {
    check_design(&a, labels.len(), "logistic")?;
    if labels.iter().any(|&y| y != 1.0 && y != -1.0) {
        return Err(Error::Invalid(
            "logistic labels must be exactly -1 or +1".into(),
        ));
    }
    let lipschitz = spectral_norm_sq(&a) / 4.0 * LIPSCHITZ_INFLATION;
    Ok(Logistic {
        a,
        labels,
        lipschitz,
    })
}

/// `log(1 + exp(t))` without overflow.
fn log1p_exp(t: f64) -> f64 {
    t.max(0.0) + (-t.abs()).exp().ln_1p()
}

fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

impl SmoothOracle for Logistic {
    fn eval(&self, x: &Array1<f64>) -> f64 {
        let margins = self.a.dot(x);
        margins
            .iter()
            .zip(self.labels.iter())
            .map(|(m, y)| log1p_exp(-y * m))
            .sum()
    }

    fn grad(&self, x: &Array1<f64>) -> Array1<f64> {
        let margins = self.a.dot(x);
        let coeff = Array1::from_iter(
            margins
                .iter()
                .zip(self.labels.iter())
                .map(|(m, y)| -y * sigmoid(-y * m)),
        );
        self.a.t().dot(&coeff)
    }

    fn lipschitz(&self) -> f64 {
        self.lipschitz
    }
}

/// The zero function: `f = 0`, `grad f = 0`, `L = 0`. With it the splitting
/// reduces to Douglas-Rachford on the two nonsmooth terms.
pub struct ZeroSmooth {
    dim: usize,
}

pub fn zero_smooth(dim: usize) -> ZeroSmooth {
    ZeroSmooth { dim }
}

impl SmoothOracle for ZeroSmooth {
    fn eval(&self, _x: &Array1<f64>) -> f64 {
        0.0
    }

    fn grad(&self, x: &Array1<f64>) -> Array1<f64> {
        assert_eq!(x.len(), self.dim);
        Array1::zeros(self.dim)
    }

    fn lipschitz(&self) -> f64 {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use rand::Rng;

    fn randn_mat(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Array2<f64> {
        Array2::from_shape_fn((n, p), |_| StandardNormal.sample(rng))
    }

    fn randn_vec(rng: &mut ChaCha8Rng, n: usize) -> Array1<f64> {
        Array1::from_iter((0..n).map(|_| StandardNormal.sample(rng)))
    }

    fn central_difference(f: &dyn SmoothOracle, x: &Array1<f64>, step: f64) -> Array1<f64> {
        let mut out = Array1::zeros(x.len());
        for i in 0..x.len() {
            let mut hi = x.clone();
            let mut lo = x.clone();
            hi[i] += step;
            lo[i] -= step;
            out[i] = (f.eval(&hi) - f.eval(&lo)) / (2.0 * step);
        }
        out
    }

    fn max_fd_relative_error(f: &dyn SmoothOracle, x: &Array1<f64>) -> f64 {
        let analytic = f.grad(x);
        let numeric = central_difference(f, x, 1e-5);
        let diff = &analytic - &numeric;
        let scale = analytic.dot(&analytic).sqrt().max(1.0);
        diff.dot(&diff).sqrt() / scale
    }

    #[test]
    fn identity_design_gradient_and_constant() {
        let f = least_squares(Array2::eye(3), Array1::zeros(3)).unwrap();
        let x = array![1.0, -2.0, 0.5];
        assert_eq!(f.grad(&x), x);
        assert!((f.lipschitz() - 1.0).abs() <= 2e-6);
    }

    #[test]
    fn scaled_identity_design_constant() {
        let f = least_squares(Array2::eye(2) * 2.0, Array1::zeros(2)).unwrap();
        assert!((f.lipschitz() - 4.0).abs() <= 1e-5);
    }

    #[test]
    fn least_squares_rejects_dimension_mismatch() {
        assert!(least_squares(Array2::eye(3), Array1::zeros(2)).is_err());
    }

    // Power iteration against a long-run reference: the exposed constant is
    // the raw spectral estimate times the documented inflation factor, and
    // never below the true value.
    #[test]
    fn lipschitz_constant_tracks_spectral_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = randn_mat(&mut rng, 5, 3);
        let reference = power_iteration(&a, 0.0, 50_000);
        let f = least_squares(a, Array1::zeros(5)).unwrap();
        let expected = reference * LIPSCHITZ_INFLATION;
        assert!((f.lipschitz() / expected - 1.0).abs() <= 1e-7);
        assert!(f.lipschitz() >= reference);
    }

    #[test]
    fn logistic_value_at_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 13;
        let a = randn_mat(&mut rng, n, 4);
        let labels = Array1::from_iter((0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }));
        let f = logistic(a, labels).unwrap();
        let expected = n as f64 * std::f64::consts::LN_2;
        assert!((f.eval(&Array1::zeros(4)) - expected).abs() < 1e-12);
    }

    #[test]
    fn logistic_single_sample_gradient() {
        let f = logistic(array![[1.0]], array![1.0]).unwrap();
        let g = f.grad(&array![0.0]);
        assert!((g[0] + 0.5).abs() < 1e-15);
    }

    #[test]
    fn logistic_rejects_bad_labels() {
        assert!(logistic(array![[1.0], [1.0]], array![1.0, 0.5]).is_err());
        assert!(logistic(array![[1.0]], array![1.0, -1.0]).is_err());
    }

    #[test]
    fn logistic_is_stable_at_extreme_margins() {
        let f = logistic(array![[1.0]], array![1.0]).unwrap();
        assert!(f.eval(&array![-1000.0]).is_finite());
        assert!((f.eval(&array![1000.0])).abs() < 1e-12);
        assert!(f.grad(&array![-1000.0]).iter().all(|v| v.is_finite()));
    }

    #[test]
    fn zero_smooth_is_identically_zero() {
        let f = zero_smooth(3);
        assert_eq!(f.eval(&array![1.0, 2.0, 3.0]), 0.0);
        assert_eq!(f.grad(&array![1.0, 2.0, 3.0]), Array1::zeros(3));
        assert_eq!(f.lipschitz(), 0.0);
    }

    #[test]
    fn gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let lsq = least_squares(randn_mat(&mut rng, 8, 5), randn_vec(&mut rng, 8)).unwrap();
        let logit = {
            let a = randn_mat(&mut rng, 9, 4);
            let labels =
                Array1::from_iter((0..9).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }));
            logistic(a, labels).unwrap()
        };
        let oracles: Vec<(&dyn SmoothOracle, usize)> = vec![(&lsq, 5), (&logit, 4)];
        for (f, p) in oracles {
            for _ in 0..10 {
                let x = randn_vec(&mut rng, p);
                assert!(max_fd_relative_error(f, &x) <= 1e-6);
            }
        }
    }

    #[test]
    fn lipschitz_certificate_holds_on_sampled_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let lsq = least_squares(randn_mat(&mut rng, 10, 6), randn_vec(&mut rng, 10)).unwrap();
        let logit = {
            let a = randn_mat(&mut rng, 12, 5);
            let labels =
                Array1::from_iter((0..12).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }));
            logistic(a, labels).unwrap()
        };
        let cases: Vec<(&dyn SmoothOracle, usize)> = vec![(&lsq, 6), (&logit, 5)];
        for (f, p) in cases {
            let lip = f.lipschitz();
            for _ in 0..200 {
                let v = randn_vec(&mut rng, p);
                let w = randn_vec(&mut rng, p);
                let dg = f.grad(&v) - f.grad(&w);
                let dx = &v - &w;
                assert!(dg.dot(&dg).sqrt() <= lip * dx.dot(&dx).sqrt());
            }
        }
    }

    #[test]
    fn convexity_inequality_holds_on_sampled_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let lsq = least_squares(randn_mat(&mut rng, 7, 4), randn_vec(&mut rng, 7)).unwrap();
        let logit = {
            let a = randn_mat(&mut rng, 8, 3);
            let labels =
                Array1::from_iter((0..8).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }));
            logistic(a, labels).unwrap()
        };
        let cases: Vec<(&dyn SmoothOracle, usize)> = vec![(&lsq, 4), (&logit, 3)];
        for (f, p) in cases {
            for _ in 0..100 {
                let v = randn_vec(&mut rng, p);
                let w = randn_vec(&mut rng, p);
                let lower = f.eval(&v) + f.grad(&v).dot(&(&w - &v));
                let scale = 1.0 + f.eval(&w).abs().max(f.eval(&v).abs());
                assert!(f.eval(&w) >= lower - 1e-10 * scale);
            }
        }
    }
}

//! Linear students: ridge regression and homogeneous linear SVM.
//!
//! Both students minimize a regularized empirical loss over weight
//! vectors `w` with no bias term:
//!
//! ```text
//! ridge:  sum_i 0.5 * (y_i - x_i . w)^2  +  lambda * ||w||^2 / 2
//! svm:    sum_i max(1 - y_i * (x_i . w), 0)  +  lambda * ||w||^2 / 2
//! ```
//!
//! Ridge has the closed form `w = (X^T X + lambda I)^{-1} X^T y`, solved
//! by Cholesky. The SVM is solved by deterministic cyclic dual coordinate
//! ascent (exact per-coordinate maximization of the box-constrained dual,
//! `alpha_i in [0, 1]`, `w = (1/lambda) sum_i alpha_i y_i x_i`), and every
//! returned weight vector carries a primal certificate: the norm of the
//! minimum-norm element of the subdifferential at `w`, which must come
//! out no larger than [`SVM_CERT_TOLERANCE`].

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Regularization used by [`reference_weights`] for classification: small
/// enough that the hinge term dominates and the fit approaches the
/// hard-margin separator.
pub const LAMBDA_REF: f64 = 1e-4;

/// Convergence tolerance on the SVM subgradient-norm certificate.
pub const SVM_CERT_TOLERANCE: f64 = 1e-5;

const SVM_MAX_SWEEPS: usize = 100_000;

/// Margin band within which a point counts as sitting on the hinge kink
/// when computing the subgradient certificate.
const MARGIN_BAND: f64 = 1e-6;

/// Supervised examples with consistent dimension and finite values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    xs: Vec<Vec<f64>>,
    ys: Vec<f64>,
}

impl Dataset {
    pub fn new(xs: Vec<Vec<f64>>, ys: Vec<f64>) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::InvalidArgument("dataset must be non-empty".into()));
        }
        if xs.len() != ys.len() {
            return Err(Error::InvalidArgument(format!(
                "{} inputs but {} targets",
                xs.len(),
                ys.len()
            )));
        }
        let dim = xs[0].len();
        if dim == 0 {
            return Err(Error::InvalidArgument("inputs must have dimension >= 1".into()));
        }
        for (i, x) in xs.iter().enumerate() {
            if x.len() != dim {
                return Err(Error::InvalidArgument(format!(
                    "input {i} has dimension {} but input 0 has {dim}",
                    x.len()
                )));
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidArgument(format!("input {i} contains a non-finite value")));
            }
        }
        if let Some(i) = ys.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("target {i} is not finite")));
        }
        Ok(Self { xs, ys })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.xs[0].len()
    }

    pub fn xs(&self) -> &[Vec<f64>] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// True when every target is exactly +1 or -1.
    pub fn has_classification_labels(&self) -> bool {
        self.ys.iter().all(|&y| y == 1.0 || y == -1.0)
    }
}

/// Which loss [`reference_weights`] should fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Regression,
    Classification,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Closed-form ridge weights `(X^T X + lambda I)^{-1} X^T y`.
///
/// `lambda = 0` is ordinary least squares and requires `X^T X` to be
/// invertible; a rank-deficient system is reported as degenerate data.
pub fn ridge_train(data: &Dataset, lambda: f64) -> Result<Vec<f64>> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "ridge lambda must be finite and >= 0, got {lambda}"
        )));
    }
    let n = data.len();
    let d = data.dim();
    let x = DMatrix::from_fn(n, d, |i, j| data.xs[i][j]);
    let y = DVector::from_iterator(n, data.ys.iter().copied());
    let mut a = x.transpose() * &x;
    for i in 0..d {
        a[(i, i)] += lambda;
    }
    let b = x.transpose() * y;
    match Cholesky::new(a.clone()) {
        Some(chol) => Ok(chol.solve(&b).iter().copied().collect()),
        None => {
            let rank = x.svd(false, false).rank(1e-10);
            Err(Error::DegenerateData(format!(
                "X^T X is singular at lambda = {lambda}: rank {rank} < dimension {d}"
            )))
        }
    }
}

/// Prediction `x . w` of a trained ridge student.
pub fn ridge_predict(weights: &[f64], x: &[f64]) -> Result<f64> {
    if weights.len() != x.len() {
        return Err(Error::InvalidArgument(format!(
            "weights have dimension {} but input has {}",
            weights.len(),
            x.len()
        )));
    }
    Ok(dot(weights, x))
}

/// A converged SVM fit: the weights and the subgradient-norm certificate
/// they satisfied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmFit {
    pub weights: Vec<f64>,
    pub certificate: f64,
    pub sweeps: usize,
}

/// Norm of the minimum-norm subgradient of the SVM objective at `w`.
///
/// Points with margin strictly below `1 - MARGIN_BAND` contribute their
/// full hinge gradient; points within the band contribute a free
/// coefficient in `[0, 1]` which is optimized (tiny box-constrained least
/// squares, solved by cyclic coordinate descent) to make the certificate
/// as small as the subdifferential allows.
pub fn svm_certificate(data: &Dataset, lambda: f64, w: &[f64]) -> Result<f64> {
    validate_svm_inputs(data, lambda)?;
    if w.len() != data.dim() {
        return Err(Error::InvalidArgument(format!(
            "weights have dimension {} but data has {}",
            w.len(),
            data.dim()
        )));
    }
    let d = w.len();
    let mut g0: Vec<f64> = w.iter().map(|v| lambda * v).collect();
    let mut boundary: Vec<usize> = Vec::new();
    for i in 0..data.len() {
        let xi = &data.xs[i];
        if dot(xi, xi) == 0.0 {
            continue;
        }
        let margin = data.ys[i] * dot(xi, w);
        if margin < 1.0 - MARGIN_BAND {
            for j in 0..d {
                g0[j] -= data.ys[i] * xi[j];
            }
        } else if margin <= 1.0 + MARGIN_BAND {
            boundary.push(i);
        }
    }
    if boundary.is_empty() {
        return Ok(norm(&g0));
    }
    // Minimize || g0 - sum_i theta_i y_i x_i || over theta in [0,1]^B.
    let mut theta = vec![0.0; boundary.len()];
    let mut g = g0.clone();
    for _ in 0..200 {
        let mut moved = 0.0f64;
        for (bi, &i) in boundary.iter().enumerate() {
            let xi = &data.xs[i];
            let sq = dot(xi, xi);
            let step = data.ys[i] * dot(xi, &g) / sq;
            let new = (theta[bi] + step).clamp(0.0, 1.0);
            let delta = new - theta[bi];
            if delta != 0.0 {
                for j in 0..d {
                    g[j] -= delta * data.ys[i] * xi[j];
                }
                theta[bi] = new;
                moved = moved.max(delta.abs());
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    Ok(norm(&g))
}

fn validate_svm_inputs(data: &Dataset, lambda: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "svm lambda must be finite and > 0, got {lambda}"
        )));
    }
    if !data.has_classification_labels() {
        return Err(Error::InvalidArgument(
            "svm labels must all be +1 or -1".into(),
        ));
    }
    Ok(())
}

/// Train a linear SVM by cyclic dual coordinate ascent.
///
/// Deterministic: sweeps visit points in data order and every coordinate
/// update is the exact box-constrained maximizer, so the result depends
/// only on `(data, lambda)`. Convergence is declared when the primal
/// subgradient certificate drops to [`SVM_CERT_TOLERANCE`]; exhausting the
/// sweep budget first is an optimization failure reporting the final
/// certificate.
pub fn svm_train(data: &Dataset, lambda: f64) -> Result<SvmFit> {
    validate_svm_inputs(data, lambda)?;
    let n = data.len();
    let d = data.dim();
    let sq_norms: Vec<f64> = data.xs.iter().map(|x| dot(x, x)).collect();
    let mut alpha = vec![0.0f64; n];
    let mut w = vec![0.0f64; d];
    let mut certificate = f64::INFINITY;
    for sweep in 1..=SVM_MAX_SWEEPS {
        let mut moved = 0.0f64;
        for i in 0..n {
            if sq_norms[i] == 0.0 {
                continue;
            }
            let margin = data.ys[i] * dot(&data.xs[i], &w);
            let new = (alpha[i] + lambda * (1.0 - margin) / sq_norms[i]).clamp(0.0, 1.0);
            let delta = new - alpha[i];
            if delta != 0.0 {
                let scale = delta * data.ys[i] / lambda;
                for j in 0..d {
                    w[j] += scale * data.xs[i][j];
                }
                alpha[i] = new;
                moved = moved.max(delta.abs());
            }
        }
        if moved < 1e-15 || sweep % 8 == 0 {
            certificate = svm_certificate(data, lambda, &w)?;
            if certificate <= SVM_CERT_TOLERANCE {
                return Ok(SvmFit { weights: w, certificate, sweeps: sweep });
            }
            if moved < 1e-15 {
                // The dual cannot move further; the certificate is final.
                break;
            }
        }
    }
    if certificate.is_infinite() {
        certificate = svm_certificate(data, lambda, &w)?;
        if certificate <= SVM_CERT_TOLERANCE {
            return Ok(SvmFit { weights: w, certificate, sweeps: SVM_MAX_SWEEPS });
        }
    }
    Err(Error::OptimizationFailure { final_norm: certificate, tolerance: SVM_CERT_TOLERANCE })
}

/// Signed distance `x . w / ||w||` of `x` from the hyperplane of `w`.
pub fn svm_distance(weights: &[f64], x: &[f64]) -> Result<f64> {
    if weights.len() != x.len() {
        return Err(Error::InvalidArgument(format!(
            "weights have dimension {} but input has {}",
            weights.len(),
            x.len()
        )));
    }
    let wn = norm(weights);
    if wn == 0.0 {
        return Err(Error::InvalidArgument(
            "zero weight vector defines no separating hyperplane".into(),
        ));
    }
    Ok(dot(weights, x) / wn)
}

/// Fraction of points whose sign under `w` matches their label.
pub fn classification_accuracy(weights: &[f64], data: &Dataset) -> Result<f64> {
    let mut correct = 0usize;
    for (x, &y) in data.xs.iter().zip(data.ys.iter()) {
        let pred = ridge_predict(weights, x)?;
        if (pred > 0.0 && y > 0.0) || (pred < 0.0 && y < 0.0) {
            correct += 1;
        }
    }
    Ok(correct as f64 / data.len() as f64)
}

/// A ridge student with a (typically hidden) regularization strength.
/// Training is stateless: each call fits fresh weights from the data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RidgeStudent {
    lambda: f64,
}

impl RidgeStudent {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "ridge student lambda must be finite and >= 0, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn train(&self, data: &Dataset) -> Result<Vec<f64>> {
        ridge_train(data, self.lambda)
    }
}

/// An SVM student with a (typically hidden) regularization strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmStudent {
    lambda: f64,
}

impl SvmStudent {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "svm student lambda must be finite and > 0, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn train(&self, data: &Dataset) -> Result<SvmFit> {
        svm_train(data, self.lambda)
    }
}

/// The teacher's ground-truth weights `w*` for a dataset.
///
/// Regression: ordinary least squares. Classification: the near
/// hard-margin SVM fit at [`LAMBDA_REF`], rejected as degenerate when the
/// data is not linearly separable.
pub fn reference_weights(data: &Dataset, task: Task) -> Result<Vec<f64>> {
    match task {
        Task::Regression => ridge_train(data, 0.0),
        Task::Classification => {
            let fit = svm_train(data, LAMBDA_REF)?;
            let acc = classification_accuracy(&fit.weights, data)?;
            if acc < 1.0 {
                return Err(Error::DegenerateData(format!(
                    "data is not linearly separable: reference SVM training accuracy {acc:.4}"
                )));
            }
            Ok(fit.weights)
        }
    }
}

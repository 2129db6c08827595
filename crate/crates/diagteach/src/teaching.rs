//! Optimal teaching sets for linear students.
//!
//! Given target weights `w*` and the student's believed regularization
//! `lambda_hat`, these constructions make `w*` the exact minimizer of the
//! student's objective:
//!
//! * ridge: the single point `x = a * w*`, `y = (lambda_hat + ||x||^2) / a`
//!   for any scale `a != 0`;
//! * svm: `N = ceil(lambda_hat * ||w*||^2)` identical copies of
//!   `(lambda_hat * w* / N, +1)`, which keeps the margin at `w*` feasible
//!   (`<= 1`) so the stationarity condition closes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::Dataset;

/// One teaching example.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeachingPoint {
    pub x: Vec<f64>,
    pub y: f64,
}

/// Construction parameters, tagged by student family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TeachingMeta {
    Ridge { lambda_hat: f64, scale: f64 },
    Svm { lambda_hat: f64, copies: usize },
}

/// A constructed teaching dataset plus how it was built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeachingSet {
    pub meta: TeachingMeta,
    pub points: Vec<TeachingPoint>,
}

impl TeachingSet {
    /// View the teaching points as a trainable dataset.
    pub fn to_dataset(&self) -> Result<Dataset> {
        Dataset::new(
            self.points.iter().map(|p| p.x.clone()).collect(),
            self.points.iter().map(|p| p.y).collect(),
        )
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s).map_err(crate::error::Error::from)?)
    }
}

fn sq_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn validate_w_star(w_star: &[f64]) -> Result<f64> {
    if w_star.is_empty() {
        return Err(Error::InvalidArgument("w* must have dimension >= 1".into()));
    }
    if w_star.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("w* contains a non-finite value".into()));
    }
    let sq = sq_norm(w_star);
    if sq == 0.0 {
        return Err(Error::InvalidArgument(
            "w* must be non-zero: a zero target admits no teaching point".into(),
        ));
    }
    Ok(sq)
}

/// Single-point ridge teaching set for target `w_star` at believed
/// regularization `lambda_hat`, with free scale `a`.
pub fn ridge_teaching_set(w_star: &[f64], lambda_hat: f64, a: f64) -> Result<TeachingSet> {
    let sq = validate_w_star(w_star)?;
    if !(lambda_hat >= 0.0) || !lambda_hat.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lambda_hat must be finite and >= 0, got {lambda_hat}"
        )));
    }
    if a == 0.0 || !a.is_finite() {
        return Err(Error::InvalidArgument(format!("scale a must be finite and non-zero, got {a}")));
    }
    let x: Vec<f64> = w_star.iter().map(|v| a * v).collect();
    let y = (lambda_hat + a * a * sq) / a;
    Ok(TeachingSet {
        meta: TeachingMeta::Ridge { lambda_hat, scale: a },
        points: vec![TeachingPoint { x, y }],
    })
}

/// `N = ceil(lambda_hat * ||w*||^2)` copies of `(lambda_hat * w* / N, +1)`
/// teaching an SVM student believed to regularize at `lambda_hat`.
pub fn svm_teaching_set(w_star: &[f64], lambda_hat: f64) -> Result<TeachingSet> {
    let sq = validate_w_star(w_star)?;
    if !(lambda_hat > 0.0) || !lambda_hat.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lambda_hat must be finite and > 0, got {lambda_hat}"
        )));
    }
    let copies = (lambda_hat * sq).ceil() as usize;
    debug_assert!(copies >= 1);
    let x: Vec<f64> = w_star.iter().map(|v| lambda_hat * v / copies as f64).collect();
    let points = vec![TeachingPoint { x, y: 1.0 }; copies];
    Ok(TeachingSet { meta: TeachingMeta::Svm { lambda_hat, copies }, points })
}

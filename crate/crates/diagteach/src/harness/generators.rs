//! Synthetic problem generators for the supervised experiments.
//!
//! Each problem type fixes the quantities shared between training and
//! held-out data (the target weights, or the cluster geometry) from one
//! seed, and samples datasets of any size from separate seeds. Nothing
//! is noisy: regression targets satisfy y = x·w* exactly and the
//! classification clusters are verified linearly separable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linear::{reference_weights, Dataset, Task};

fn standard_normal_vec(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.sample(StandardNormal)).collect()
}

fn unit_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v = standard_normal_vec(rng, d);
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// A noiseless linear-regression task: fixed target weights, fresh
/// standard-normal inputs on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionProblem {
    pub w_star: Vec<f64>,
}

impl RegressionProblem {
    /// Target weights with a random direction and norm uniform in [1, 5].
    pub fn from_seed(dims: usize, seed: u64) -> Result<Self> {
        if dims == 0 {
            return Err(Error::InvalidArgument("dims must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let direction = unit_vector(&mut rng, dims);
        let norm = rng.gen_range(1.0..=5.0);
        Ok(Self { w_star: direction.into_iter().map(|x| x * norm).collect() })
    }

    /// `n` rows of X ~ N(0, I) with exact targets y = X·w*.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Dataset> {
        let d = self.w_star.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut inputs = Vec::with_capacity(n);
        let mut targets = Vec::with_capacity(n);
        for _ in 0..n {
            let x = standard_normal_vec(&mut rng, d);
            let y: f64 = x.iter().zip(&self.w_star).map(|(a, b)| a * b).sum();
            inputs.push(x);
            targets.push(y);
        }
        Dataset::new(inputs, targets)
    }
}

/// Noiseless regression data plus the weights that generated it.
pub fn gen_regression(n: usize, d: usize, seed: u64) -> Result<(Dataset, Vec<f64>)> {
    if n < d {
        return Err(Error::InvalidArgument(format!(
            "need at least d = {d} rows to make the design full rank, got {n}"
        )));
    }
    let problem = RegressionProblem::from_seed(d, seed)?;
    let data = problem.sample(n, seed.wrapping_add(1))?;
    Ok((data, problem.w_star))
}

/// A separable two-cluster classification task: fixed cluster axis,
/// fresh cluster samples on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationProblem {
    pub axis: Vec<f64>,
    pub separation: f64,
}

impl ClassificationProblem {
    pub fn from_seed(dims: usize, separation: f64, seed: u64) -> Result<Self> {
        if dims == 0 {
            return Err(Error::InvalidArgument("dims must be at least 1".into()));
        }
        if separation < 4.0 {
            return Err(Error::InvalidArgument(format!(
                "separation {separation} below 4 does not guarantee separable clusters"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Self { axis: unit_vector(&mut rng, dims), separation })
    }

    /// `n` points alternating between the +1 cluster at +separation·axis
    /// and the -1 cluster at -separation·axis. Labels stay balanced to
    /// within one point by construction.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Dataset> {
        let d = self.axis.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut inputs = Vec::with_capacity(n);
        let mut targets = Vec::with_capacity(n);
        for i in 0..n {
            let label = if i % 2 == 0 { 1.0 } else { -1.0 };
            let noise = standard_normal_vec(&mut rng, d);
            let x: Vec<f64> = noise
                .into_iter()
                .zip(&self.axis)
                .map(|(e, u)| e + label * self.separation * u)
                .collect();
            inputs.push(x);
            targets.push(label);
        }
        Dataset::new(inputs, targets)
    }
}

/// Separable classification data, retried until a hard-margin separator
/// verifiably exists.
pub fn gen_classification(n: usize, d: usize, separation: f64, seed: u64) -> Result<Dataset> {
    let problem = ClassificationProblem::from_seed(d, separation, seed)?;
    const RETRIES: u64 = 20;
    for attempt in 0..RETRIES {
        let data = problem.sample(n, seed.wrapping_add(1 + attempt))?;
        if reference_weights(&data, Task::Classification).is_ok() {
            return Ok(data);
        }
    }
    Err(Error::Generation(format!(
        "no separable sample found in {RETRIES} attempts (n = {n}, d = {d}, separation = {separation})"
    )))
}

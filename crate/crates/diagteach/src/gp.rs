//! Gaussian-process belief over a hidden scalar surface.
//!
//! A teacher probing a student observes noisy-free scalar feedback at
//! chosen hypothesis points and maintains a GP posterior over the whole
//! hypothesis space. The kernel is RBF:
//!
//! ```text
//! k(x, x') = signal_variance * exp(-||x - x'||^2 / (2 * lengthscale^2))
//! ```
//!
//! Posterior queries use a jittered Cholesky solve of the Gram matrix.
//! Acquisition is expected improvement for *minimization*:
//!
//! ```text
//! EI(x) = (best - mu) * Phi(z) + sigma * phi(z),   z = (best - mu) / sigma
//! ```
//!
//! with `EI = 0` when `sigma = 0`. Candidate selection breaks ties toward
//! the lowest candidate index, and an empty history falls back to a
//! uniform random cold-start draw.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// RBF kernel hyperparameters plus the diagonal jitter used to keep the
/// Gram matrix positive definite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelConfig {
    pub lengthscale: f64,
    pub signal_variance: f64,
    pub jitter: f64,
}

impl KernelConfig {
    pub fn new(lengthscale: f64, signal_variance: f64, jitter: f64) -> Result<Self> {
        if !(lengthscale > 0.0) || !lengthscale.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "lengthscale must be positive and finite, got {lengthscale}"
            )));
        }
        if !(signal_variance > 0.0) || !signal_variance.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "signal_variance must be positive and finite, got {signal_variance}"
            )));
        }
        if !(jitter >= 0.0) || !jitter.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "jitter must be non-negative and finite, got {jitter}"
            )));
        }
        Ok(Self { lengthscale, signal_variance, jitter })
    }

    /// Kernel value between two points of equal dimension.
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
        self.signal_variance * (-sq / (2.0 * self.lengthscale * self.lengthscale)).exp()
    }
}

/// Observed probe history: hypothesis points and the scalar feedback each
/// produced. Inputs are validated against per-dimension bounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GpHistory {
    dim: usize,
    bounds: Vec<(f64, f64)>,
    inputs: Vec<Vec<f64>>,
    targets: Vec<f64>,
}

impl GpHistory {
    pub fn new(bounds: Vec<(f64, f64)>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidArgument("bounds must be non-empty".into()));
        }
        for &(lo, hi) in &bounds {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "invalid bound ({lo}, {hi}); need finite lo < hi"
                )));
            }
        }
        Ok(Self { dim: bounds.len(), bounds, inputs: Vec::new(), targets: Vec::new() })
    }

    pub fn push(&mut self, input: Vec<f64>, target: f64) -> Result<()> {
        if input.len() != self.dim {
            return Err(Error::InvalidArgument(format!(
                "input dimension {} does not match history dimension {}",
                input.len(),
                self.dim
            )));
        }
        if !target.is_finite() {
            return Err(Error::InvalidArgument(format!("target must be finite, got {target}")));
        }
        for (d, (&v, &(lo, hi))) in input.iter().zip(&self.bounds).enumerate() {
            if !(v >= lo && v <= hi) {
                return Err(Error::InvalidArgument(format!(
                    "input coordinate {d} = {v} outside bounds [{lo}, {hi}]"
                )));
            }
        }
        self.inputs.push(input);
        self.targets.push(target);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    /// Smallest observed target, if any. This is the incumbent `best` for
    /// expected improvement under the minimization convention.
    pub fn best_observed(&self) -> Option<f64> {
        self.targets.iter().copied().fold(None, |acc, t| match acc {
            None => Some(t),
            Some(b) => Some(b.min(t)),
        })
    }
}

/// Posterior mean and variance at a single query point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Posterior {
    pub mean: f64,
    pub variance: f64,
}

/// How `select_next` picks the next probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcquisitionMode {
    /// Argmax of expected improvement, ties to the lowest candidate index.
    Ei,
    /// Uniform random candidate.
    Random,
}

fn factorize(history: &GpHistory, kernel: &KernelConfig) -> Result<Cholesky<f64, nalgebra::Dyn>> {
    let n = history.len();
    let mut gram = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = kernel.eval(&history.inputs[i], &history.inputs[j]);
        }
        gram[(i, i)] += kernel.jitter;
    }
    Cholesky::new(gram).ok_or_else(|| {
        // Factorization only fails when rows coincide; report which inputs
        // collide so the caller can fix its probe stream.
        let mut colliding = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let sq: f64 = history.inputs[i]
                    .iter()
                    .zip(&history.inputs[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                if sq.sqrt() < 1e-9 {
                    colliding.push((i, j));
                }
            }
        }
        Error::GramFactorization { colliding }
    })
}

/// GP posterior at `query` given the probe history.
///
/// An empty history returns the prior: mean 0, variance `signal_variance`.
/// The returned variance is clamped at zero to absorb jitter-level
/// round-off.
pub fn posterior_at(history: &GpHistory, kernel: &KernelConfig, query: &[f64]) -> Result<Posterior> {
    if query.len() != history.dim() {
        return Err(Error::InvalidArgument(format!(
            "query dimension {} does not match history dimension {}",
            query.len(),
            history.dim()
        )));
    }
    if history.is_empty() {
        return Ok(Posterior { mean: 0.0, variance: kernel.signal_variance });
    }
    let chol = factorize(history, kernel)?;
    let n = history.len();
    let y = DVector::from_iterator(n, history.targets().iter().copied());
    let kstar = DVector::from_iterator(n, history.inputs().iter().map(|x| kernel.eval(x, query)));
    let alpha = chol.solve(&y);
    let mean = kstar.dot(&alpha);
    let kxx = kernel.eval(query, query);
    let variance = (kxx - kstar.dot(&chol.solve(&kstar))).max(0.0);
    Ok(Posterior { mean, variance })
}

fn std_normal_cdf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-z / std::f64::consts::SQRT_2)
}

fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Expected improvement below `best` for a minimization target.
///
/// Returns exactly 0 when the posterior variance is 0; otherwise the
/// closed form, clamped at zero against round-off.
pub fn expected_improvement(posterior: Posterior, best: f64) -> f64 {
    let sigma = posterior.variance.sqrt();
    if sigma == 0.0 {
        return 0.0;
    }
    let d = best - posterior.mean;
    let z = d / sigma;
    (d * std_normal_cdf(z) + sigma * std_normal_pdf(z)).max(0.0)
}

/// Pick the index of the next probe among `candidates`.
///
/// EI mode maximizes expected improvement, breaking ties toward the lowest
/// index; with an empty history there is no posterior to rank with, so the
/// cold start draws uniformly at random. Random mode draws uniformly.
pub fn select_next<R: Rng + ?Sized>(
    history: &GpHistory,
    kernel: &KernelConfig,
    candidates: &[Vec<f64>],
    mode: AcquisitionMode,
    rng: &mut R,
) -> Result<usize> {
    if candidates.is_empty() {
        return Err(Error::InvalidArgument("candidate set must be non-empty".into()));
    }
    match mode {
        AcquisitionMode::Random => Ok(rng.gen_range(0..candidates.len())),
        AcquisitionMode::Ei => {
            let best = match history.best_observed() {
                None => return Ok(rng.gen_range(0..candidates.len())),
                Some(b) => b,
            };
            let mut best_idx = 0;
            let mut best_ei = f64::NEG_INFINITY;
            for (i, c) in candidates.iter().enumerate() {
                let ei = expected_improvement(posterior_at(history, kernel, c)?, best);
                if ei > best_ei {
                    best_ei = ei;
                    best_idx = i;
                }
            }
            Ok(best_idx)
        }
    }
}

/// Probe history, kernel, and the session hyperparameter policy bundled
/// together: `signal_variance` starts at 1.0 and is rescaled once to the
/// sample variance of the observed targets as soon as two are available.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BeliefState {
    history: GpHistory,
    kernel: KernelConfig,
    rescaled: bool,
}

impl BeliefState {
    /// New belief over the box `bounds` with `lengthscale` fixed for the
    /// session and the standard jitter.
    pub fn new(bounds: Vec<(f64, f64)>, lengthscale: f64) -> Result<Self> {
        let kernel = KernelConfig::new(lengthscale, 1.0, 1e-8)?;
        Ok(Self { history: GpHistory::new(bounds)?, kernel, rescaled: false })
    }

    pub fn history(&self) -> &GpHistory {
        &self.history
    }

    pub fn kernel(&self) -> &KernelConfig {
        &self.kernel
    }

    /// Record one probe outcome. After the second observation the signal
    /// variance is rescaled, once, to the sample variance of the targets
    /// (skipped if the targets are numerically constant).
    pub fn observe(&mut self, input: Vec<f64>, target: f64) -> Result<()> {
        self.history.push(input, target)?;
        if !self.rescaled && self.history.len() >= 2 {
            let ts = self.history.targets();
            let mean = ts.iter().sum::<f64>() / ts.len() as f64;
            let var = ts.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / (ts.len() - 1) as f64;
            if var > 1e-12 {
                self.kernel.signal_variance = var;
            }
            self.rescaled = true;
        }
        Ok(())
    }

    pub fn posterior_at(&self, query: &[f64]) -> Result<Posterior> {
        posterior_at(&self.history, &self.kernel, query)
    }

    /// Posterior at every point of `grid`, in grid order.
    pub fn posterior_surface(&self, grid: &[Vec<f64>]) -> Result<Vec<Posterior>> {
        grid.iter().map(|q| self.posterior_at(q)).collect()
    }

    pub fn expected_improvement_at(&self, query: &[f64]) -> Result<f64> {
        let best = self.history.best_observed().unwrap_or(0.0);
        Ok(expected_improvement(self.posterior_at(query)?, best))
    }

    pub fn select_next<R: Rng + ?Sized>(
        &self,
        candidates: &[Vec<f64>],
        mode: AcquisitionMode,
        rng: &mut R,
    ) -> Result<usize> {
        select_next(&self.history, &self.kernel, candidates, mode, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_kernel() -> KernelConfig {
        KernelConfig::new(1.0, 1.0, 1e-8).unwrap()
    }

    fn history_1d(pairs: &[(f64, f64)]) -> GpHistory {
        let mut h = GpHistory::new(vec![(-1e6, 1e6)]).unwrap();
        for &(x, y) in pairs {
            h.push(vec![x], y).unwrap();
        }
        h
    }

    #[test]
    fn empty_history_returns_prior_exactly() {
        let h = history_1d(&[]);
        let p = posterior_at(&h, &unit_kernel(), &[3.7]).unwrap();
        assert_eq!(p.mean, 0.0);
        assert_eq!(p.variance, 1.0);
    }

    #[test]
    fn posterior_interpolates_observations() {
        let h = history_1d(&[(0.0, 1.0)]);
        let p = posterior_at(&h, &unit_kernel(), &[0.0]).unwrap();
        assert!((p.mean - 1.0).abs() < 1e-4, "mean {} should interpolate 1.0", p.mean);
        assert!(p.variance <= 1e-4, "variance {} should collapse at an observation", p.variance);
    }

    #[test]
    fn posterior_reverts_to_prior_far_from_data() {
        let h = history_1d(&[(0.0, 1.0)]);
        let p = posterior_at(&h, &unit_kernel(), &[10.0]).unwrap();
        assert!(p.mean.abs() < 1e-4, "mean {} should revert to 0 ten lengthscales out", p.mean);
        assert!((p.variance - 1.0).abs() < 1e-4, "variance {} should revert to prior", p.variance);
    }

    #[test]
    fn multi_point_interpolation() {
        let pts = [(-2.0, 0.5), (0.0, 1.0), (1.5, -0.25), (4.0, 2.0)];
        let h = history_1d(&pts);
        let k = unit_kernel();
        for &(x, y) in &pts {
            let p = posterior_at(&h, &k, &[x]).unwrap();
            assert!((p.mean - y).abs() < 1e-4, "mean at {x}: {} vs {y}", p.mean);
            assert!(p.variance <= 1e-4);
        }
    }

    #[test]
    fn ei_closed_form_far_query() {
        // One observation at 0 with target 1.0; ten+ lengthscales away the
        // posterior is the prior (mu=0, sigma=1), best=1.0, so
        // EI = 1*Phi(1) + phi(1) = 0.841345 + 0.241971 = 1.083315.
        let h = history_1d(&[(0.0, 1.0)]);
        let p = posterior_at(&h, &unit_kernel(), &[100.0]).unwrap();
        let ei = expected_improvement(p, 1.0);
        assert!((ei - 1.0833).abs() < 1e-3, "EI {ei} should match the closed form");
    }

    #[test]
    fn ei_zero_at_zero_variance() {
        let ei = expected_improvement(Posterior { mean: 0.3, variance: 0.0 }, 1.0);
        assert_eq!(ei, 0.0);
    }

    #[test]
    fn ei_at_observed_point_is_negligible() {
        // Jitter keeps the posterior variance at an observation near 1e-8,
        // so EI there is sigma * phi(0) ~ 4e-5 rather than exactly zero.
        let h = history_1d(&[(0.0, 1.0), (2.0, 3.0)]);
        let p = posterior_at(&h, &unit_kernel(), &[0.0]).unwrap();
        let ei = expected_improvement(p, 1.0);
        assert!(ei <= 1e-4, "EI {ei} at the incumbent should be jitter-level");
    }

    #[test]
    fn select_next_matches_exhaustive_scan() {
        let h = history_1d(&[(0.0, 2.0), (5.0, 0.5), (9.0, 4.0)]);
        let k = unit_kernel();
        let candidates: Vec<Vec<f64>> = (0..=90).map(|i| vec![i as f64 * 0.1]).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let picked = select_next(&h, &k, &candidates, AcquisitionMode::Ei, &mut rng).unwrap();

        // Independent scan: recompute EI per candidate and argmax by hand.
        let best = 0.5;
        let mut oracle = 0;
        let mut oracle_ei = f64::NEG_INFINITY;
        for (i, c) in candidates.iter().enumerate() {
            let ei = expected_improvement(posterior_at(&h, &k, c).unwrap(), best);
            if ei > oracle_ei {
                oracle_ei = ei;
                oracle = i;
            }
        }
        assert_eq!(picked, oracle);
    }

    #[test]
    fn select_next_random_is_deterministic_under_seed() {
        let h = history_1d(&[(0.0, 2.0)]);
        let k = unit_kernel();
        let candidates: Vec<Vec<f64>> = (0..50).map(|i| vec![i as f64]).collect();
        let a = select_next(&h, &k, &candidates, AcquisitionMode::Random, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let b = select_next(&h, &k, &candidates, AcquisitionMode::Random, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cold_start_draws_within_candidates() {
        let h = history_1d(&[]);
        let k = unit_kernel();
        let candidates: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64]).collect();
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let i = select_next(&h, &k, &candidates, AcquisitionMode::Ei, &mut rng).unwrap();
            assert!(i < candidates.len());
        }
    }

    #[test]
    fn empty_candidates_rejected() {
        let h = history_1d(&[(0.0, 1.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let err = select_next(&h, &unit_kernel(), &[], AcquisitionMode::Ei, &mut rng);
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn duplicate_inputs_without_jitter_name_the_collision() {
        let h = history_1d(&[(2.0, 1.0), (2.0, 1.0)]);
        let k = KernelConfig { lengthscale: 1.0, signal_variance: 1.0, jitter: 0.0 };
        match posterior_at(&h, &k, &[0.0]) {
            Err(Error::GramFactorization { colliding }) => assert_eq!(colliding, vec![(0, 1)]),
            other => panic!("expected Gram failure, got {other:?}"),
        }
    }

    #[test]
    fn belief_state_rescales_signal_variance_once() {
        let mut b = BeliefState::new(vec![(0.0, 100.0)], 10.0).unwrap();
        assert_eq!(b.kernel().signal_variance, 1.0);
        b.observe(vec![10.0], 4.0).unwrap();
        assert_eq!(b.kernel().signal_variance, 1.0);
        b.observe(vec![20.0], 10.0).unwrap();
        // Sample variance of {4, 10} is 18.
        assert!((b.kernel().signal_variance - 18.0).abs() < 1e-12);
        b.observe(vec![30.0], 400.0).unwrap();
        assert!((b.kernel().signal_variance - 18.0).abs() < 1e-12, "rescale must happen once");
    }

    #[test]
    fn belief_state_keeps_unit_variance_for_constant_targets() {
        let mut b = BeliefState::new(vec![(0.0, 1.0), (0.0, 1.0)], 0.2).unwrap();
        b.observe(vec![0.25, 0.5], 0.0).unwrap();
        b.observe(vec![0.75, 0.5], 0.0).unwrap();
        assert_eq!(b.kernel().signal_variance, 1.0);
    }

    #[test]
    fn history_rejects_out_of_bounds_input() {
        let mut h = GpHistory::new(vec![(0.0, 10.0)]).unwrap();
        assert!(matches!(h.push(vec![11.0], 0.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(h.push(vec![1.0, 2.0], 0.0), Err(Error::InvalidArgument(_))));
        h.push(vec![10.0], 1.0).unwrap();
    }

    #[test]
    fn variance_never_increases_with_more_data() {
        let k = unit_kernel();
        let queries = [vec![0.5], vec![3.0], vec![7.5]];
        let mut h = history_1d(&[(1.0, 0.3)]);
        let mut prev: Vec<f64> =
            queries.iter().map(|q| posterior_at(&h, &k, q).unwrap().variance).collect();
        for &(x, y) in &[(4.0, 1.2), (6.0, -0.4), (2.0, 0.9)] {
            h.push(vec![x], y).unwrap();
            let cur: Vec<f64> =
                queries.iter().map(|q| posterior_at(&h, &k, q).unwrap().variance).collect();
            for (c, p) in cur.iter().zip(&prev) {
                assert!(*c <= p + 1e-8, "variance rose from {p} to {c}");
            }
            prev = cur;
        }
    }
}

//! Diagnosing a student's hidden regularization strength.
//!
//! The teacher cannot read the student's `lambda*`; it can only hand the
//! student datasets and observe responses. Each probe iteration:
//!
//! 1. pick a hypothesis `lambda_t` from the grid (EI or random);
//! 2. construct the teaching set `D(lambda_t)` that would be optimal if
//!    the hypothesis were right;
//! 3. train the real student (hidden `lambda*`) and a simulated student
//!    (`lambda_t`) on `D(lambda_t)`, both from scratch;
//! 4. query both at a probe point and record the squared response gap as
//!    the GP target for `lambda_t`.
//!
//! The gap vanishes exactly when the hypothesis matches the student, so
//! minimizing the GP posterior mean over the grid yields the MAP estimate
//! `lambda_hat`. Every session consumes exactly `probes` iterations and
//! discards the real student's trained weights afterward.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gp::{AcquisitionMode, BeliefState, GpHistory, KernelConfig};
use crate::linear::{ridge_predict, ridge_train, svm_distance, svm_train, RidgeStudent, SvmStudent};
use crate::teaching::{ridge_teaching_set, svm_teaching_set, TeachingSet};

/// Where the probe query point comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeMode {
    /// Query at the teaching point of the current iteration's set.
    ReuseTrainingPoint,
    /// Query at a fresh uniform draw from `[-1, 1]^d`.
    Random,
}

/// Session parameters for one diagnosis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosisConfig {
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Number of evenly spaced grid hypotheses (endpoints included).
    pub grid_points: usize,
    /// Probe budget `T`; the session runs exactly this many iterations.
    pub probes: usize,
    pub acquisition: AcquisitionMode,
    pub probe_mode: ProbeMode,
    /// Free scale `a` of the ridge teaching set.
    pub scale_a: f64,
    pub rng_seed: u64,
}

impl DiagnosisConfig {
    /// Defaults matching the experiment setup: 201-point grid over
    /// `[0, lambda_max]`, five EI probes reusing the teaching point.
    pub fn new(lambda_max: f64, rng_seed: u64) -> Self {
        Self {
            lambda_min: 0.0,
            lambda_max,
            grid_points: 201,
            probes: 5,
            acquisition: AcquisitionMode::Ei,
            probe_mode: ProbeMode::ReuseTrainingPoint,
            scale_a: 1.0,
            rng_seed,
        }
    }

    fn validate(&self, positive_grid: bool) -> Result<()> {
        if !(self.lambda_min < self.lambda_max)
            || !self.lambda_min.is_finite()
            || !self.lambda_max.is_finite()
        {
            return Err(Error::InvalidArgument(format!(
                "need finite lambda_min < lambda_max, got [{}, {}]",
                self.lambda_min, self.lambda_max
            )));
        }
        if positive_grid && self.lambda_min <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "svm hypotheses must be positive; raise lambda_min above 0 (got {})",
                self.lambda_min
            )));
        }
        if !positive_grid && self.lambda_min < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "ridge hypotheses must be non-negative, got lambda_min {}",
                self.lambda_min
            )));
        }
        if self.grid_points < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 points, got {}",
                self.grid_points
            )));
        }
        if self.probes == 0 {
            return Err(Error::InvalidArgument("probe budget must be at least 1".into()));
        }
        if self.scale_a == 0.0 || !self.scale_a.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "teaching scale a must be finite and non-zero, got {}",
                self.scale_a
            )));
        }
        Ok(())
    }

    /// The evenly spaced hypothesis grid (endpoints included).
    pub fn grid(&self) -> Vec<f64> {
        let n = self.grid_points;
        let step = (self.lambda_max - self.lambda_min) / (n - 1) as f64;
        (0..n).map(|i| self.lambda_min + step * i as f64).collect()
    }
}

/// One probe iteration, as logged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub iter: usize,
    pub hypothesis: f64,
    pub probe: Vec<f64>,
    pub real_response: f64,
    pub simulated_response: f64,
    pub target: f64,
}

/// Outcome of a diagnosis session.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagnosisResult {
    pub map_estimate: f64,
    pub history: GpHistory,
    pub kernel: KernelConfig,
    pub probe_log: Vec<ProbeRecord>,
}

impl DiagnosisResult {
    /// Probe log as JSON lines, one record per probe.
    pub fn probe_log_jsonl(&self) -> Result<String> {
        let mut out = String::new();
        for rec in &self.probe_log {
            out.push_str(&serde_json::to_string(rec)?);
            out.push('\n');
        }
        Ok(out)
    }
}

/// Probe query point for the current iteration.
pub fn probe_point<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    mode: ProbeMode,
    teaching_point: &[f64],
) -> Vec<f64> {
    match mode {
        ProbeMode::ReuseTrainingPoint => teaching_point.to_vec(),
        ProbeMode::Random => (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
    }
}

/// Grid point minimizing the GP posterior mean, ties to the lowest index.
pub fn map_estimate(
    history: &GpHistory,
    kernel: &KernelConfig,
    grid: &[Vec<f64>],
) -> Result<usize> {
    if history.is_empty() {
        return Err(Error::InvalidArgument(
            "map estimate requires at least one observation".into(),
        ));
    }
    if grid.is_empty() {
        return Err(Error::InvalidArgument("hypothesis grid must be non-empty".into()));
    }
    let mut best = 0;
    let mut best_mean = f64::INFINITY;
    for (i, q) in grid.iter().enumerate() {
        let m = crate::gp::posterior_at(history, kernel, q)?.mean;
        if m < best_mean {
            best_mean = m;
            best = i;
        }
    }
    Ok(best)
}

/// The same observations shifted by the mean target, so the zero-mean
/// prior pulls sparse regions toward the average instead of below every
/// observation. Shifting all targets by a constant leaves the posterior
/// mean's argmin unchanged wherever data speaks.
fn centered_view(history: &GpHistory) -> Result<GpHistory> {
    let mut centered = GpHistory::new(history.bounds().to_vec())?;
    if history.is_empty() {
        return Ok(centered);
    }
    let mean = history.targets().iter().sum::<f64>() / history.len() as f64;
    for (input, target) in history.inputs().iter().zip(history.targets()) {
        centered.push(input.clone(), target - mean)?;
    }
    Ok(centered)
}

fn diagnose_lambda<F>(
    config: &DiagnosisConfig,
    positive_grid: bool,
    probeable: impl Fn(f64) -> bool,
    mut respond: F,
) -> Result<DiagnosisResult>
where
    F: FnMut(f64, &mut ChaCha8Rng) -> Result<ProbeSample>,
{
    config.validate(positive_grid)?;
    let grid = config.grid();
    let grid_points: Vec<Vec<f64>> = grid.iter().map(|&l| vec![l]).collect();
    // Hypotheses whose simulated training would be ill-posed (e.g. a ridge
    // student at exactly lambda = 0 on a rank-one teaching point) stay in
    // the MAP grid but are never probed.
    let probe_pool: Vec<Vec<f64>> =
        grid_points.iter().filter(|p| probeable(p[0])).cloned().collect();
    if probe_pool.is_empty() {
        return Err(Error::InvalidArgument(
            "no hypothesis in the grid admits a well-posed probe".into(),
        ));
    }
    // The squared response difference varies smoothly over the whole
    // hypothesis range, so the session kernel uses a long lengthscale
    // (half the range). A short lengthscale leaves the posterior mean
    // pinned to the prior between probes; acquisition then degenerates
    // into space filling and the argmin lands far from the true minimum.
    // With the long lengthscale the posterior tracks the surface's
    // global curvature and the probes concentrate near its minimum.
    let lengthscale = (config.lambda_max - config.lambda_min) / 2.0;
    let mut belief =
        BeliefState::new(vec![(config.lambda_min, config.lambda_max)], lengthscale)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut probe_log = Vec::with_capacity(config.probes);
    let mut probed: Vec<f64> = Vec::with_capacity(config.probes);

    for iter in 0..config.probes {
        // The session belief keeps the raw targets, but acquisition and
        // the final argmin consult a view centered on the running target
        // mean. Squared differences are all positive, so under the
        // zero-mean prior the raw posterior sags toward zero wherever
        // probes are sparse; every unexplored edge then undercuts every
        // observation and the argmin escapes the explored region.
        // Centering makes sparse regions relax to the average target
        // instead, which neither attracts the argmin nor starves
        // expected improvement.
        let centered = centered_view(belief.history())?;
        let hypothesis = match config.acquisition {
            AcquisitionMode::Ei => {
                // Probes are noise-free, so repeating one cannot gain
                // information; keep only unprobed hypotheses on offer.
                let fresh: Vec<Vec<f64>> = probe_pool
                    .iter()
                    .filter(|p| !probed.contains(&p[0]))
                    .cloned()
                    .collect();
                let pool = if fresh.is_empty() { &probe_pool } else { &fresh };
                let idx = crate::gp::select_next(
                    &centered,
                    belief.kernel(),
                    pool,
                    AcquisitionMode::Ei,
                    &mut rng,
                )?;
                pool[idx][0]
            }
            AcquisitionMode::Random => {
                let idx = belief.select_next(
                    &probe_pool,
                    AcquisitionMode::Random,
                    &mut rng,
                )?;
                probe_pool[idx][0]
            }
        };
        let sample = respond(hypothesis, &mut rng)?;
        let target = (sample.simulated - sample.real).powi(2);
        belief.observe(vec![hypothesis], target)?;
        probed.push(hypothesis);
        probe_log.push(ProbeRecord {
            iter,
            hypothesis,
            probe: sample.probe,
            real_response: sample.real,
            simulated_response: sample.simulated,
            target,
        });
    }

    let centered = centered_view(belief.history())?;
    let map_idx = map_estimate(&centered, belief.kernel(), &grid_points)?;
    Ok(DiagnosisResult {
        map_estimate: grid[map_idx],
        history: belief.history().clone(),
        kernel: *belief.kernel(),
        probe_log,
    })
}

struct ProbeSample {
    probe: Vec<f64>,
    real: f64,
    simulated: f64,
}

fn teaching_probe<R: Rng + ?Sized>(
    rng: &mut R,
    mode: ProbeMode,
    set: &TeachingSet,
) -> Vec<f64> {
    let teaching_point = &set.points[0].x;
    probe_point(rng, teaching_point.len(), mode, teaching_point)
}

/// Estimate a ridge student's hidden regularization strength.
///
/// The trained weights of the real student are used only to read one
/// response per probe and are discarded; the session state that persists
/// is the GP history in the returned result.
pub fn diagnose_ridge(
    student: &RidgeStudent,
    w_star: &[f64],
    config: &DiagnosisConfig,
) -> Result<DiagnosisResult> {
    // In d >= 2 a single teaching point cannot pin an unregularized
    // simulated student, so the lambda = 0 hypothesis is unprobeable.
    let dim = w_star.len();
    diagnose_lambda(config, false, move |l| dim == 1 || l > 0.0, |hypothesis, rng| {
        let set = ridge_teaching_set(w_star, hypothesis, config.scale_a)?;
        let data = set.to_dataset()?;
        let real_w = student.train(&data)?;
        let sim_w = ridge_train(&data, hypothesis)?;
        let probe = teaching_probe(rng, config.probe_mode, &set);
        Ok(ProbeSample {
            real: ridge_predict(&real_w, &probe)?,
            simulated: ridge_predict(&sim_w, &probe)?,
            probe,
        })
    })
}

/// Estimate an SVM student's hidden regularization strength.
///
/// Responses are signed hyperplane distances at the probe point. The
/// hypothesis grid must be strictly positive because the SVM teaching
/// construction is undefined at `lambda_hat = 0`.
pub fn diagnose_svm(
    student: &SvmStudent,
    w_star: &[f64],
    config: &DiagnosisConfig,
) -> Result<DiagnosisResult> {
    diagnose_lambda(config, true, |_| true, |hypothesis, rng| {
        let set = svm_teaching_set(w_star, hypothesis)?;
        let data = set.to_dataset()?;
        let real_fit = student.train(&data)?;
        let sim_fit = svm_train(&data, hypothesis)?;
        let probe = teaching_probe(rng, config.probe_mode, &set);
        Ok(ProbeSample {
            real: svm_distance(&real_fit.weights, &probe)?,
            simulated: svm_distance(&sim_fit.weights, &probe)?,
            probe,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gp::posterior_at;

    #[test]
    fn probe_point_modes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let reused = probe_point(&mut rng, 1, ProbeMode::ReuseTrainingPoint, &[2.0]);
        assert_eq!(reused, vec![2.0]);
        for _ in 0..32 {
            let p = probe_point(&mut rng, 3, ProbeMode::Random, &[9.0, 9.0, 9.0]);
            assert_eq!(p.len(), 3);
            assert!(p.iter().all(|v| (-1.0..=1.0).contains(v)), "{p:?}");
        }
    }

    #[test]
    fn map_estimate_returns_probed_zero() {
        // A fenced V-shaped history: the exact-zero observation at 10 is
        // the posterior-mean minimum.
        let mut h = GpHistory::new(vec![(0.0, 100.0)]).unwrap();
        for (x, y) in [(0.0, 5.0), (5.0, 2.0), (10.0, 0.0), (15.0, 2.0), (60.0, 4.0)] {
            h.push(vec![x], y).unwrap();
        }
        let kernel = KernelConfig::new(10.0, 4.0, 1e-8).unwrap();
        let grid: Vec<Vec<f64>> = (0..=200).map(|i| vec![i as f64 * 0.5]).collect();
        let idx = map_estimate(&h, &kernel, &grid).unwrap();
        assert_eq!(grid[idx][0], 10.0, "posterior mean minimum should sit at the zero");
    }

    #[test]
    fn map_estimate_breaks_exact_ties_low() {
        // One positive observation at 50; the posterior mean decays
        // symmetrically, so the two grid endpoints are bitwise-equal
        // minima and the lower index must win.
        let mut h = GpHistory::new(vec![(0.0, 100.0)]).unwrap();
        h.push(vec![50.0], 2.0).unwrap();
        let kernel = KernelConfig::new(10.0, 1.0, 1e-8).unwrap();
        let grid: Vec<Vec<f64>> = (0..=100).map(|i| vec![i as f64]).collect();
        let m0 = posterior_at(&h, &kernel, &[0.0]).unwrap().mean;
        let m100 = posterior_at(&h, &kernel, &[100.0]).unwrap().mean;
        assert_eq!(m0, m100, "endpoints must tie exactly");
        let idx = map_estimate(&h, &kernel, &grid).unwrap();
        assert_eq!(grid[idx][0], 0.0, "tie must break toward the lower index");
    }

    #[test]
    fn map_estimate_recovers_zero_from_drilled_session_history() {
        // A history shaped like a real session: early spread-out probes of
        // a parabola-shaped error surface, then a probe that hits the
        // minimum exactly. At the session lengthscale (half the range) the
        // argmin must return the probed zero.
        let mut h = GpHistory::new(vec![(0.0, 100.0)]).unwrap();
        let t = |l: f64| (l - 10.0) * (l - 10.0) / 9.0;
        for x in [100.0, 0.5, 21.0, 47.0, 10.0] {
            h.push(vec![x], t(x)).unwrap();
        }
        let kernel = KernelConfig::new(50.0, 300.0, 1e-8).unwrap();
        let grid: Vec<Vec<f64>> = (0..=200).map(|i| vec![i as f64 * 0.5]).collect();
        let idx = map_estimate(&h, &kernel, &grid).unwrap();
        assert_eq!(
            grid[idx][0], 10.0,
            "argmin should sit on the probed zero of the error surface"
        );
    }

    #[test]
    fn map_estimate_needs_observations() {
        let h = GpHistory::new(vec![(0.0, 1.0)]).unwrap();
        let kernel = KernelConfig::new(0.1, 1.0, 1e-8).unwrap();
        assert!(map_estimate(&h, &kernel, &[vec![0.0]]).is_err());
    }

    #[test]
    fn ridge_diagnosis_spends_exact_probe_budget() {
        let student = RidgeStudent::new(10.0).unwrap();
        let config = DiagnosisConfig::new(100.0, 7);
        let result = diagnose_ridge(&student, &[2.0, -1.0], &config).unwrap();
        assert_eq!(result.probe_log.len(), 5);
        assert_eq!(result.history.len(), 5);
        let grid = config.grid();
        assert!(grid.contains(&result.map_estimate));
    }

    #[test]
    fn ridge_diagnosis_is_deterministic_under_seed() {
        let student = RidgeStudent::new(33.0).unwrap();
        let config = DiagnosisConfig::new(100.0, 123);
        let a = diagnose_ridge(&student, &[1.0, 2.0], &config).unwrap();
        let b = diagnose_ridge(&student, &[1.0, 2.0], &config).unwrap();
        assert_eq!(a.probe_log, b.probe_log);
        assert_eq!(a.map_estimate, b.map_estimate);
    }

    #[test]
    fn ridge_diagnosis_estimates_lambda_accurately() {
        // Weight-space error of teaching at lambda_hat vs the true
        // lambda*: (lambda_hat - lambda*)^2 * ||w*||^2 / (lambda* + ||w*||^2)^2.
        // This equals the held-out MSE under unit-covariance inputs.
        let w_star = [2.0, -1.0];
        let sq: f64 = w_star.iter().map(|v| v * v).sum();
        let lambda_star = 10.0;
        let student = RidgeStudent::new(lambda_star).unwrap();
        let mut errs = Vec::new();
        for seed in 0..10 {
            let config = DiagnosisConfig::new(100.0, seed);
            let r = diagnose_ridge(&student, &w_star, &config).unwrap();
            let gap = r.map_estimate - lambda_star;
            errs.push(gap * gap * sq / (lambda_star + sq).powi(2));
        }
        let mean = errs.iter().sum::<f64>() / errs.len() as f64;
        assert!(mean <= 1e-2, "mean weight-space MSE {mean} too large: {errs:?}");
    }

    #[test]
    fn random_acquisition_also_runs_to_budget() {
        let student = RidgeStudent::new(5.0).unwrap();
        let mut config = DiagnosisConfig::new(50.0, 11);
        config.acquisition = AcquisitionMode::Random;
        let r = diagnose_ridge(&student, &[1.0], &config).unwrap();
        assert_eq!(r.probe_log.len(), 5);
    }

    #[test]
    fn svm_diagnosis_runs_and_returns_grid_point() {
        let student = SvmStudent::new(2.0).unwrap();
        let mut config = DiagnosisConfig::new(100.0, 5);
        config.lambda_min = 0.5;
        let r = diagnose_svm(&student, &[1.0, 1.0], &config).unwrap();
        assert_eq!(r.probe_log.len(), 5);
        assert!(config.grid().contains(&r.map_estimate));
    }

    #[test]
    fn svm_diagnosis_rejects_zero_grid_start() {
        let student = SvmStudent::new(2.0).unwrap();
        let config = DiagnosisConfig::new(100.0, 5);
        assert!(matches!(
            diagnose_svm(&student, &[1.0, 1.0], &config),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn config_validation() {
        let student = RidgeStudent::new(1.0).unwrap();
        let mut c = DiagnosisConfig::new(100.0, 0);
        c.probes = 0;
        assert!(diagnose_ridge(&student, &[1.0], &c).is_err());
        let mut c = DiagnosisConfig::new(100.0, 0);
        c.grid_points = 1;
        assert!(diagnose_ridge(&student, &[1.0], &c).is_err());
        let mut c = DiagnosisConfig::new(100.0, 0);
        c.scale_a = 0.0;
        assert!(diagnose_ridge(&student, &[1.0], &c).is_err());
        let mut c = DiagnosisConfig::new(100.0, 0);
        c.lambda_min = 100.0;
        assert!(diagnose_ridge(&student, &[1.0], &c).is_err());
    }

    #[test]
    fn probe_log_serializes_to_json_lines() {
        let student = RidgeStudent::new(3.0).unwrap();
        let config = DiagnosisConfig::new(10.0, 2);
        let r = diagnose_ridge(&student, &[1.5], &config).unwrap();
        let jsonl = r.probe_log_jsonl().unwrap();
        assert_eq!(jsonl.lines().count(), 5);
        for line in jsonl.lines() {
            let rec: ProbeRecord = serde_json::from_str(line).unwrap();
            assert!(rec.target >= 0.0);
        }
    }
}

//! Reproducible Monte Carlo harness: Gaussian ensembles with known
//! variance, optional planted spikes, and the coverage / estimator
//! comparison experiments.
//!
//! Determinism contract: identical [`SimConfig`] values produce
//! bit-identical results. Trials execute in parallel but are generated
//! and assembled by trial index, never by completion order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::estimator::{
    estimate_noise, median_baseline, threshold_t1, EstimateConfig, NormalizationMode,
};
use crate::matrix::Matrix;
use crate::rmt::shape_params;
use crate::rng::CounterRng;
use crate::spectrum::{eigen_spectrum, sample_covariance, SampleMatrix, Scale, Spectrum};
use crate::{Error, Result, ARTIFACT_VERSION};

/// RNG stream identifiers; one per purpose so draws never collide.
mod stream {
    pub const NOISE: u64 = 1;
    pub const SPIKE_DIRECTIONS: u64 = 2;
}

/// Configuration of one simulated ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n_dim: usize,
    pub n_samples: usize,
    /// Noise standard deviation.
    pub sigma: f64,
    pub trials: u64,
    pub seed: u64,
    /// Planted spike strengths: each adds `strength * v v^T` to the
    /// population covariance along a deterministic direction v.
    #[serde(default)]
    pub spikes: Vec<f64>,
    pub alpha1: f64,
    pub alpha2: f64,
    #[serde(default)]
    pub normalization_mode: NormalizationMode,
}

impl SimConfig {
    /// Documented defaults behind the estimator-comparison table:
    /// N = 256, s = 512, 1000 trials, alpha1 = alpha2 = 0.97.
    pub fn comparison_defaults(seed: u64) -> Self {
        SimConfig {
            n_dim: 256,
            n_samples: 512,
            sigma: 1.0,
            trials: 1000,
            seed,
            spikes: Vec::new(),
            alpha1: 0.97,
            alpha2: 0.97,
            normalization_mode: NormalizationMode::default(),
        }
    }

    /// Documented defaults behind the coverage experiment:
    /// N = 64, s = 256, 1000 trials, pure noise.
    pub fn coverage_defaults(seed: u64) -> Self {
        SimConfig {
            n_dim: 64,
            n_samples: 256,
            sigma: 1.0,
            trials: 1000,
            seed,
            spikes: Vec::new(),
            alpha1: 0.97,
            alpha2: 0.97,
            normalization_mode: NormalizationMode::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_dim < 1 {
            return Err(Error::InvalidArgument("n_dim must be >= 1".into()));
        }
        if self.n_samples < 2 {
            return Err(Error::InsufficientSamples(
                "simulation needs n_samples >= 2".into(),
            ));
        }
        if !self.sigma.is_finite() || self.sigma <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        if self.trials < 1 {
            return Err(Error::InvalidArgument("trials must be >= 1".into()));
        }
        if self.spikes.iter().any(|&c| !c.is_finite() || c <= 0.0) {
            return Err(Error::InvalidArgument(
                "spike strengths must be positive".into(),
            ));
        }
        if self.spikes.len() >= self.n_dim.min(self.n_samples) {
            return Err(Error::InvalidArgument(format!(
                "{} spikes do not fit a {}x{} ensemble",
                self.spikes.len(),
                self.n_samples,
                self.n_dim
            )));
        }
        Ok(())
    }
}

/// Deterministic orthonormal direction set from the QR (modified
/// Gram-Schmidt) of a seeded Gaussian matrix.
fn seeded_directions(seed: u64, dim: usize, count: usize, salt: u64) -> Vec<Vec<f64>> {
    let rng = CounterRng::new(seed, stream::SPIKE_DIRECTIONS, salt);
    let mut dirs: Vec<Vec<f64>> = (0..count)
        .map(|k| {
            (0..dim)
                .map(|j| rng.normal_at((k * dim + j) as u64))
                .collect()
        })
        .collect();
    for k in 0..count {
        for prev in 0..k {
            let dot: f64 = dirs[k].iter().zip(&dirs[prev]).map(|(a, b)| a * b).sum();
            let prev_dir = dirs[prev].clone();
            for (x, p) in dirs[k].iter_mut().zip(&prev_dir) {
                *x -= dot * p;
            }
        }
        let norm: f64 = dirs[k].iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut dirs[k] {
            *x /= norm;
        }
    }
    dirs
}

/// The spike coefficient profile over observations: a seeded unit
/// direction in sample space, centered and rescaled so the planted
/// sample-covariance contribution is exactly `strength * v v^T`.
fn spike_profiles(seed: u64, n_samples: usize, count: usize) -> Vec<Vec<f64>> {
    let mut profiles = seeded_directions(seed, n_samples, count, 1);
    for u in &mut profiles {
        let mean = u.iter().sum::<f64>() / n_samples as f64;
        for x in u.iter_mut() {
            *x -= mean;
        }
        let ss: f64 = u.iter().map(|x| x * x).sum();
        let scale = ((n_samples as f64 - 1.0) / ss).sqrt();
        for x in u.iter_mut() {
            *x *= scale;
        }
    }
    profiles
}

/// The (seed, trial)-determined observation matrix: i.i.d. Gaussian
/// entries with variance sigma^2, plus the configured rank-one spikes.
pub fn gaussian_sample_matrix(config: &SimConfig, trial_index: u64) -> Result<SampleMatrix> {
    config.validate()?;
    let (s, n) = (config.n_samples, config.n_dim);
    let rng = CounterRng::new(config.seed, stream::NOISE, trial_index);
    let mut data = Matrix::zeros(s, n);
    {
        let flat = data.row_mut(0); // rows are contiguous; fill all at once
        debug_assert_eq!(flat.len(), n);
    }
    for i in 0..s {
        let row = data.row_mut(i);
        for (j, x) in row.iter_mut().enumerate() {
            *x = config.sigma * rng.normal_at((i * n + j) as u64);
        }
    }
    if !config.spikes.is_empty() {
        let dirs = seeded_directions(config.seed, n, config.spikes.len(), 0);
        let profiles = spike_profiles(config.seed, s, config.spikes.len());
        for (k, &strength) in config.spikes.iter().enumerate() {
            let c = strength.sqrt();
            for i in 0..s {
                let coeff = c * profiles[k][i];
                let row = data.row_mut(i);
                for (x, v) in row.iter_mut().zip(&dirs[k]) {
                    *x += coeff * v;
                }
            }
        }
    }
    SampleMatrix::from_matrix(data)
}

/// Covariance-scale spectrum of one simulated trial.
pub fn trial_spectrum(config: &SimConfig, trial_index: u64) -> Result<Spectrum> {
    let data = gaussian_sample_matrix(config, trial_index)?;
    eigen_spectrum(&sample_covariance(&data), config.n_samples)
}

/// Wishart-scale spectrum of the uncentered scatter matrix X^T X of one
/// trial's noise (no spikes, no centering). This is the ensemble the
/// largest-eigenvalue law is stated for.
pub fn wishart_spectrum(config: &SimConfig, trial_index: u64) -> Result<Spectrum> {
    config.validate()?;
    let (s, n) = (config.n_samples, config.n_dim);
    let rng = CounterRng::new(config.seed, stream::NOISE, trial_index);
    let mut x = Matrix::zeros(s, n);
    for i in 0..s {
        let row = x.row_mut(i);
        for (j, v) in row.iter_mut().enumerate() {
            *v = config.sigma * rng.normal_at((i * n + j) as u64);
        }
    }
    let mut scatter = Matrix::zeros(n, n);
    for i in 0..s {
        let row = x.row(i);
        for j in 0..n {
            let xi = row[j];
            if xi == 0.0 {
                continue;
            }
            for k in j..n {
                let v = scatter.at(j, k) + xi * row[k];
                scatter.set(j, k, v);
            }
        }
    }
    for j in 0..n {
        for k in j..n {
            scatter.set(k, j, scatter.at(j, k));
        }
    }
    let values = crate::spectrum::eigen::sym_eigenvalues(&scatter)?;
    Spectrum::new(values, n, s, Scale::Wishart)
}

/// One row of the coverage report: the empirical frequency, at a given
/// alpha1, with which the detection bound admits the noise eigenvalues
/// and (when spikes are planted) excludes the spike eigenvalues.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverageRow {
    pub alpha1: f64,
    pub successes: u64,
    pub trials: u64,
    pub rate: f64,
    /// Binomial standard error sqrt(rate (1 - rate) / trials).
    pub std_error: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverageReport {
    pub version: String,
    pub config: SimConfig,
    pub alpha_levels: Vec<f64>,
    pub rows: Vec<CoverageRow>,
}

/// Run the coverage experiment over the given alpha1 levels, sharing one
/// seed set across levels so rates are comparable.
pub fn coverage_experiment(config: &SimConfig, alpha_levels: &[f64]) -> Result<CoverageReport> {
    config.validate()?;
    if alpha_levels.is_empty() {
        return Err(Error::InvalidArgument("no alpha levels given".into()));
    }
    if config.n_samples <= config.n_dim {
        return Err(Error::InvalidArgument(
            "coverage experiment needs n_samples > n_dim so the spectrum has full rank".into(),
        ));
    }
    let shape = shape_params(config.n_dim, config.n_samples)?;
    let mut t1s = Vec::with_capacity(alpha_levels.len());
    for &alpha in alpha_levels {
        t1s.push(threshold_t1(&shape, alpha)?);
    }
    let k = config.spikes.len();

    let per_trial: Vec<Vec<bool>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| -> Result<Vec<bool>> {
            let spec = trial_spectrum(config, trial)?;
            let values = spec.values();
            let floor = values[values.len() - 1];
            let ok = t1s
                .iter()
                .map(|&t1| {
                    let bound = t1 * floor;
                    // noise admission: the largest non-spike eigenvalue
                    // (never lambda_1, which is exempt by rule)
                    let noise_top = values[k.max(1)];
                    let admitted = noise_top <= bound;
                    // spike exclusion: the smallest spike stays above
                    let excluded = k == 0 || values[k - 1] > bound;
                    admitted && excluded
                })
                .collect();
            Ok(ok)
        })
        .collect::<Result<Vec<_>>>()?;

    let rows = alpha_levels
        .iter()
        .enumerate()
        .map(|(li, &alpha)| {
            let successes = per_trial.iter().filter(|t| t[li]).count() as u64;
            let rate = successes as f64 / config.trials as f64;
            CoverageRow {
                alpha1: alpha,
                successes,
                trials: config.trials,
                rate,
                std_error: (rate * (1.0 - rate) / config.trials as f64).sqrt(),
            }
        })
        .collect();

    Ok(CoverageReport {
        version: ARTIFACT_VERSION.to_string(),
        config: config.clone(),
        alpha_levels: alpha_levels.to_vec(),
        rows,
    })
}

/// Per-sigma means of the three estimators, on standard-deviation scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub sigma_true: f64,
    /// Mean of the median-rescaling baseline.
    pub mean_median: f64,
    /// Mean of the noise-set average (the ML estimate).
    pub mean_ml: f64,
    /// Mean of the min-rule estimate.
    pub mean_min_rule: f64,
    /// Trials in which the no-split fallback fired.
    pub fallback_count: u64,
}

/// Mean absolute difference and mean squared error of the per-level
/// estimator means against the true sigmas, on std-dev scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonSummary {
    pub mad_median: f64,
    pub mad_ml: f64,
    pub mad_min_rule: f64,
    pub mse_median: f64,
    pub mse_ml: f64,
    pub mse_min_rule: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub version: String,
    pub config: SimConfig,
    pub sigmas: Vec<f64>,
    pub rows: Vec<ComparisonRow>,
    pub summary: ComparisonSummary,
}

/// Run the estimator comparison over a sigma grid: for each level,
/// `trials` independent spectra and the mean of each estimator on
/// std-dev scale, then MAD/MSE rows across levels.
pub fn comparison_experiment(sigmas: &[f64], config: &SimConfig) -> Result<ComparisonReport> {
    config.validate()?;
    if sigmas.is_empty() || sigmas.iter().any(|&s| !s.is_finite() || s <= 0.0) {
        return Err(Error::InvalidArgument(
            "sigma grid must be non-empty and positive".into(),
        ));
    }
    if config.n_dim > config.n_samples {
        return Err(Error::UnsupportedRegime(
            "the median baseline needs gamma = N/s <= 1".into(),
        ));
    }
    let est_config = EstimateConfig {
        mode: config.normalization_mode,
        allow_no_split_fallback: true,
    };

    let mut rows = Vec::with_capacity(sigmas.len());
    for &sigma in sigmas {
        let level_config = SimConfig {
            sigma,
            ..config.clone()
        };
        let trials: Vec<(f64, f64, f64, bool)> = (0..config.trials)
            .into_par_iter()
            .map(|trial| -> Result<(f64, f64, f64, bool)> {
                let spec = trial_spectrum(&level_config, trial)?;
                let med = median_baseline(&spec)?;
                let est = estimate_noise(&spec, config.alpha1, config.alpha2, &est_config)?;
                Ok((
                    med.max(0.0).sqrt(),
                    est.sigma_sq_initial.max(0.0).sqrt(),
                    est.sigma_sq_final.max(0.0).sqrt(),
                    est.diagnostics.no_split_fallback,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let t = config.trials as f64;
        rows.push(ComparisonRow {
            sigma_true: sigma,
            mean_median: trials.iter().map(|r| r.0).sum::<f64>() / t,
            mean_ml: trials.iter().map(|r| r.1).sum::<f64>() / t,
            mean_min_rule: trials.iter().map(|r| r.2).sum::<f64>() / t,
            fallback_count: trials.iter().filter(|r| r.3).count() as u64,
        });
    }

    let k = sigmas.len() as f64;
    let agg = |f: &dyn Fn(&ComparisonRow) -> f64| -> (f64, f64) {
        let mad = rows
            .iter()
            .map(|r| (f(r) - r.sigma_true).abs())
            .sum::<f64>()
            / k;
        let mse = rows
            .iter()
            .map(|r| (f(r) - r.sigma_true).powi(2))
            .sum::<f64>()
            / k;
        (mad, mse)
    };
    let (mad_median, mse_median) = agg(&|r| r.mean_median);
    let (mad_ml, mse_ml) = agg(&|r| r.mean_ml);
    let (mad_min_rule, mse_min_rule) = agg(&|r| r.mean_min_rule);

    Ok(ComparisonReport {
        version: ARTIFACT_VERSION.to_string(),
        config: config.clone(),
        sigmas: sigmas.to_vec(),
        rows,
        summary: ComparisonSummary {
            mad_median,
            mad_ml,
            mad_min_rule,
            mse_median,
            mse_ml,
            mse_min_rule,
        },
    })
}

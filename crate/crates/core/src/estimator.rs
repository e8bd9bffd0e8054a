//! Noise variance estimation from a covariance spectrum.
//!
//! The pipeline: derive shape constants, compute a detection threshold
//! T1 (from the Tracy-Widom quantile at level alpha1) and an
//! overestimation threshold T2 (from the corrected deviation at level
//! alpha2), split the spectrum into signal and noise subsets with the
//! ratio test `lambda_i <= T1 * lambda_N`, average the noise subset, and
//! take the minimum of that average and the bias-corrected bound
//! `mu * T2 * lambda_{m+1} / (1 + sqrt(N/s))`.

use serde::{Deserialize, Serialize};

use crate::rmt::{shape_params, tw::tw1_quantile, ShapeParams};
use crate::spectrum::{rescale, Scale, Spectrum};
use crate::{Error, Result};

/// Levels accepted by the end-to-end estimator; the tail extensions of
/// the Tracy-Widom table are for reporting only, so thresholds stay
/// interior to it.
pub const LEVEL_RANGE: (f64, f64) = (0.5, 0.999);

/// Normalization of the bias-corrected bound: `PaperLiteral` divides by
/// `1 + sqrt(N/s)` once; `SquaredEdge` divides by its square, which
/// matches the bulk-edge normalization of covariance eigenvalues. The
/// comparison harness quantifies the difference empirically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizationMode {
    #[default]
    PaperLiteral,
    SquaredEdge,
}

impl NormalizationMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormalizationMode::PaperLiteral => "paper-literal",
            NormalizationMode::SquaredEdge => "squared-edge",
        }
    }
}

impl std::str::FromStr for NormalizationMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-literal" => Ok(NormalizationMode::PaperLiteral),
            "squared-edge" => Ok(NormalizationMode::SquaredEdge),
            other => Err(Error::InvalidArgument(format!(
                "unknown normalization mode {other:?}; expected paper-literal or squared-edge"
            ))),
        }
    }
}

/// Estimator configuration beyond the probability levels.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct EstimateConfig {
    pub mode: NormalizationMode,
    /// When no eigenvalue satisfies the detection bound, fall back to
    /// m = N - 1 instead of failing. Off by default so signal-dominated
    /// inputs surface as errors.
    pub allow_no_split_fallback: bool,
}

/// The threshold pair with the levels and shape that produced it.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Thresholds {
    pub t1: f64,
    pub t2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub shape: ShapeParams,
}

/// Diagnostic flags populated by [`estimate_noise`].
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    /// The detection bound admitted no eigenvalue and the configured
    /// fallback m = N - 1 was applied.
    pub no_split_fallback: bool,
    /// The spectrum was truncated to the top min(N, s - 1) values before
    /// estimation (rank-deficient covariance).
    pub rank_truncated: bool,
    /// The input spectrum contained eigenvalues at or below the rank
    /// tolerance (numerically zero).
    pub degenerate_floor: bool,
}

/// Split index, both estimates, and the min-rule result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoiseEstimate {
    /// Number of leading eigenvalues attributed to signal; the noise set
    /// is `lambda_{m+1} ..= lambda_N`.
    pub split_index_m: usize,
    /// Arithmetic mean of the noise-set eigenvalues.
    pub sigma_sq_initial: f64,
    /// The bias-corrected bound `mu * T2 * lambda_{m+1} / (1 + sqrt(N/s))`.
    pub sigma_sq_bound: f64,
    /// `min(sigma_sq_initial, sigma_sq_bound)`.
    pub sigma_sq_final: f64,
    /// True when the corrected bound was the minimum.
    pub bound_active: bool,
    pub diagnostics: Diagnostics,
    pub thresholds: Thresholds,
    /// Dimension actually used after rank truncation.
    pub effective_n_dim: usize,
    /// Dimension of the input spectrum.
    pub input_n_dim: usize,
}

fn check_level(alpha: f64, name: &str) -> Result<()> {
    if !alpha.is_finite() || !(0.5..1.0).contains(&alpha) {
        return Err(Error::InvalidLevel(format!(
            "{name} must lie in [0.5, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// Detection threshold from explicit centering constants:
/// `T1 = s * (xi * q + mu) / (sqrt(s) - sqrt(N))^2` with
/// `q = F_TW1^{-1}(alpha1)`. Exposed separately because the constants
/// exist for shapes where the corrected deviation (and therefore
/// [`ShapeParams`]) does not.
pub fn threshold_t1_from_centering(
    mu: f64,
    xi: f64,
    n_dim: usize,
    n_samples: usize,
    alpha1: f64,
) -> Result<f64> {
    check_level(alpha1, "alpha1")?;
    if n_dim == n_samples {
        return Err(Error::DegenerateAspect(format!(
            "detection threshold undefined for N = s = {n_dim}"
        )));
    }
    let q = tw1_quantile(alpha1)?;
    let denom = ((n_samples as f64).sqrt() - (n_dim as f64).sqrt()).powi(2);
    let t1 = n_samples as f64 * (xi * q + mu) / denom;
    if t1 <= 0.0 {
        return Err(Error::InvalidLevel(format!(
            "alpha1 = {alpha1} produces non-positive detection threshold {t1}"
        )));
    }
    Ok(t1)
}

/// Detection threshold T1 at level alpha1 for the given shape.
pub fn threshold_t1(shape: &ShapeParams, alpha1: f64) -> Result<f64> {
    threshold_t1_from_centering(shape.mu, shape.xi, shape.n_dim, shape.n_samples, alpha1)
}

/// Overestimation threshold `T2 = 1 / (xi' * F_TW1^{-1}(1 - alpha2) + mu)`.
/// Approaches 1/mu as the quantile term vanishes.
pub fn threshold_t2(shape: &ShapeParams, alpha2: f64) -> Result<f64> {
    check_level(alpha2, "alpha2")?;
    let q = tw1_quantile(1.0 - alpha2)?;
    let denom = shape.xi_corrected * q + shape.mu;
    if denom <= 0.0 {
        return Err(Error::InvalidLevel(format!(
            "alpha2 = {alpha2} produces non-positive threshold denominator {denom}"
        )));
    }
    Ok(1.0 / denom)
}

/// Both thresholds at once.
pub fn thresholds(shape: &ShapeParams, alpha1: f64, alpha2: f64) -> Result<Thresholds> {
    Ok(Thresholds {
        t1: threshold_t1(shape, alpha1)?,
        t2: threshold_t2(shape, alpha2)?,
        alpha1,
        alpha2,
        shape: *shape,
    })
}

/// Find the split index m: the first index i >= 2 (1-based, scanning the
/// descending spectrum from the top) with `lambda_i <= t1 * lambda_N`
/// gives m = i - 1 signal eigenvalues. The first eigenvalue is never
/// eligible as noise. Equality is accepted as noise.
pub fn split_spectrum(spec: &Spectrum, t1: f64) -> Result<usize> {
    if spec.scale() != Scale::Covariance {
        return Err(Error::InvalidArgument(
            "split_spectrum needs a covariance-scale spectrum".into(),
        ));
    }
    let values = spec.values();
    let n = values.len();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "split needs at least two eigenvalues".into(),
        ));
    }
    let floor = values[n - 1];
    if floor <= spec.rank_tolerance() {
        return Err(Error::DegenerateFloor(format!(
            "smallest retained eigenvalue {floor:.6e} is at or below the rank tolerance"
        )));
    }
    let bound = t1 * floor;
    for (idx, &v) in values.iter().enumerate().skip(1) {
        if v <= bound {
            return Ok(idx); // idx is 0-based position of lambda_{m+1}
        }
    }
    Err(Error::NoNoiseSubspace(format!(
        "no eigenvalue beyond the first satisfies lambda_i <= {bound:.6e}"
    )))
}

/// Maximum-likelihood noise variance: the mean of the noise-set
/// eigenvalues `lambda_{m+1} ..= lambda_N`.
pub fn ml_noise_variance(spec: &Spectrum, m: usize) -> Result<f64> {
    if spec.scale() != Scale::Covariance {
        return Err(Error::InvalidArgument(
            "ml_noise_variance needs a covariance-scale spectrum".into(),
        ));
    }
    let n = spec.n_dim();
    if m == n {
        return Err(Error::EmptyNoiseSet(format!(
            "m = N = {n} leaves no noise eigenvalues"
        )));
    }
    if m < 1 || m > n {
        return Err(Error::InvalidArgument(format!(
            "split index m = {m} outside 1..={}",
            n - 1
        )));
    }
    let tail = &spec.values()[m..];
    Ok(tail.iter().sum::<f64>() / tail.len() as f64)
}

/// Bias-corrected bound `mu * T2 * lambda_{m+1} / (1 + sqrt(N/s))`, or
/// with the squared denominator under [`NormalizationMode::SquaredEdge`].
pub fn corrected_bound(
    spec: &Spectrum,
    m: usize,
    t2: f64,
    shape: &ShapeParams,
    mode: NormalizationMode,
) -> Result<f64> {
    if spec.scale() != Scale::Covariance {
        return Err(Error::InvalidArgument(
            "corrected_bound needs a covariance-scale spectrum".into(),
        ));
    }
    let values = spec.values();
    if m >= values.len() {
        return Err(Error::InvalidArgument(format!(
            "lambda_{{m+1}} does not exist for m = {m}, N = {}",
            values.len()
        )));
    }
    let spike = values[m];
    if spike <= 0.0 {
        return Err(Error::DegenerateSpike(format!(
            "lambda_{{m+1}} = {spike:.6e} is not positive"
        )));
    }
    let edge = 1.0 + shape.gamma.sqrt();
    let denom = match mode {
        NormalizationMode::PaperLiteral => edge,
        NormalizationMode::SquaredEdge => edge * edge,
    };
    Ok(shape.mu * t2 * spike / denom)
}

/// End-to-end estimation: thresholds, split, the ML average, the
/// corrected bound, and the min-rule result with diagnostics.
/// Deterministic for fixed inputs.
///
/// The spectrum may be on either scale (it is converted to covariance
/// scale internally, which is exact). Rank-deficient inputs are
/// truncated to their top min(N, s - 1) eigenvalues with the dimension
/// reinterpreted accordingly; estimation requires at least three
/// eigenvalues above the rank tolerance.
pub fn estimate_noise(
    spec: &Spectrum,
    alpha1: f64,
    alpha2: f64,
    config: &EstimateConfig,
) -> Result<NoiseEstimate> {
    check_level(alpha1, "alpha1")?;
    check_level(alpha2, "alpha2")?;
    for (name, alpha) in [("alpha1", alpha1), ("alpha2", alpha2)] {
        if alpha > LEVEL_RANGE.1 {
            return Err(Error::InvalidLevel(format!(
                "{name} must lie in [{}, {}], got {alpha}",
                LEVEL_RANGE.0, LEVEL_RANGE.1
            )));
        }
    }

    let cov = rescale(spec, Scale::Covariance);
    let top = cov.values()[0];
    if !(top > 0.0) {
        return Err(Error::DegenerateSpectrum(format!(
            "largest eigenvalue {top:.6e} is not positive"
        )));
    }
    let tol = cov.rank_tolerance();
    let degenerate_floor = cov.values().iter().any(|&v| v <= tol);

    let input_n_dim = cov.n_dim();
    let retain = input_n_dim.min(cov.n_samples() - 1);
    let rank_truncated = retain < input_n_dim;
    let working = if rank_truncated {
        cov.truncated(retain)
    } else {
        cov
    };

    let above_tol = working.values().iter().filter(|&&v| v > tol).count();
    if above_tol < 3 {
        return Err(Error::DegenerateSpectrum(format!(
            "only {above_tol} eigenvalue(s) above the rank tolerance; \
             estimation needs at least 3"
        )));
    }

    let shape = shape_params(working.n_dim(), working.n_samples())?;
    let thr = thresholds(&shape, alpha1, alpha2)?;

    let mut diagnostics = Diagnostics {
        no_split_fallback: false,
        rank_truncated,
        degenerate_floor,
    };
    let m = resolve_split(&working, thr.t1, config, &mut diagnostics)?;

    let sigma_sq_initial = ml_noise_variance(&working, m)?;
    let sigma_sq_bound = corrected_bound(&working, m, thr.t2, &shape, config.mode)?;
    let sigma_sq_final = sigma_sq_initial.min(sigma_sq_bound);

    Ok(NoiseEstimate {
        split_index_m: m,
        sigma_sq_initial,
        sigma_sq_bound,
        sigma_sq_final,
        bound_active: sigma_sq_bound < sigma_sq_initial,
        diagnostics,
        thresholds: thr,
        effective_n_dim: working.n_dim(),
        input_n_dim,
    })
}

/// Split with the configured no-split policy: either surface the error
/// or fall back to m = N - 1 with a diagnostic flag.
fn resolve_split(
    spec: &Spectrum,
    t1: f64,
    config: &EstimateConfig,
    diagnostics: &mut Diagnostics,
) -> Result<usize> {
    match split_spectrum(spec, t1) {
        Ok(m) => Ok(m),
        Err(Error::NoNoiseSubspace(_)) if config.allow_no_split_fallback => {
            diagnostics.no_split_fallback = true;
            Ok(spec.n_dim() - 1)
        }
        Err(e) => Err(e),
    }
}

/// Classical baseline: rescale the sample eigenvalue median by the
/// median of the unit-variance Marchenko-Pastur law at the spectrum's
/// aspect ratio. Defined for gamma = N/s in (0, 1].
pub fn median_baseline(spec: &Spectrum) -> Result<f64> {
    if spec.scale() != Scale::Covariance {
        return Err(Error::InvalidArgument(
            "median_baseline needs a covariance-scale spectrum".into(),
        ));
    }
    let gamma = spec.n_dim() as f64 / spec.n_samples() as f64;
    if gamma > 1.0 {
        return Err(Error::UnsupportedRegime(format!(
            "median baseline needs gamma = N/s <= 1, got {gamma}"
        )));
    }
    let values = spec.values();
    let n = values.len();
    let sample_median = if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    };
    Ok(sample_median / crate::rmt::mp::mp_median(gamma)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmt::tw_centering;

    fn spec(values: &[f64], n_samples: usize) -> Spectrum {
        Spectrum::new(values.to_vec(), values.len(), n_samples, Scale::Covariance).unwrap()
    }

    #[test]
    fn t1_reduces_to_ratio_of_mu_when_quantile_is_zero() {
        // at the alpha with F^{-1}(alpha) = 0 the threshold is
        // s * mu / (sqrt(s) - sqrt(N))^2; probe via the identity
        // T1(alpha) - s*xi*q/(...)^2 == s*mu/(...)^2 for any alpha.
        let shape = shape_params(64, 256).unwrap();
        let alpha = 0.9;
        let q = tw1_quantile(alpha).unwrap();
        let denom = (256f64.sqrt() - 64f64.sqrt()).powi(2);
        let t1 = threshold_t1(&shape, alpha).unwrap();
        let reduced = t1 - 256.0 * shape.xi * q / denom;
        assert!((reduced - 256.0 * shape.mu / denom).abs() < 1e-9 * reduced);
    }

    #[test]
    fn t1_matches_frozen_oracle_values() {
        let shape = shape_params(64, 256).unwrap();
        let t1 = threshold_t1(&shape, 0.95).unwrap();
        assert!((t1 - 2348.752989247642).abs() < 0.02, "t1 = {t1}");

        // (N = 256, s = 3): the corrected deviation is undefined there,
        // but the detection threshold itself is well-defined from the
        // centering constants.
        let (mu, xi) = tw_centering(256, 3).unwrap();
        let t1 = threshold_t1_from_centering(mu, xi, 256, 3, 0.97).unwrap();
        assert!((t1 - 4.852642339388).abs() < 1e-4, "t1 = {t1}");
    }

    #[test]
    fn t1_increases_with_level() {
        let shape = shape_params(64, 256).unwrap();
        let lo = threshold_t1(&shape, 0.95).unwrap();
        let hi = threshold_t1(&shape, 0.99).unwrap();
        assert!(hi > lo);
    }

    #[test]
    fn t1_rejects_square_shapes_and_bad_levels() {
        let shape = shape_params(16, 16).unwrap();
        assert!(matches!(
            threshold_t1(&shape, 0.95),
            Err(Error::DegenerateAspect(_))
        ));
        let shape = shape_params(64, 256).unwrap();
        for alpha in [0.3, 1.0, f64::NAN] {
            assert!(threshold_t1(&shape, alpha).is_err());
        }
    }

    #[test]
    fn t2_matches_frozen_oracle_and_limit() {
        let shape = shape_params(256, 512).unwrap();
        let t2 = threshold_t2(&shape, 0.97).unwrap();
        assert!((t2 - 0.000699095562).abs() < 1e-8, "t2 = {t2}");

        // hypothetical xi' = 0 collapses T2 to 1/mu
        let mut flat = shape;
        flat.xi_corrected = 0.0;
        let t2 = threshold_t2(&flat, 0.97).unwrap();
        assert!((t2 - 1.0 / shape.mu).abs() < 1e-18);
    }

    #[test]
    fn t2_increases_with_level() {
        let shape = shape_params(256, 512).unwrap();
        let lo = threshold_t2(&shape, 0.90).unwrap();
        let hi = threshold_t2(&shape, 0.99).unwrap();
        assert!(hi > lo);
        // and never exceeds the closed-form cap
        for alpha in [0.6, 0.9, 0.97] {
            let t2 = threshold_t2(&shape, alpha).unwrap();
            let q = tw1_quantile(1.0 - alpha).unwrap();
            let cap = 1.0 / (shape.mu - q.abs() * shape.xi_corrected);
            assert!(t2 <= cap * (1.0 + 1e-15));
        }
    }

    #[test]
    fn split_finds_first_admissible_index() {
        let s = spec(&[10.0, 1.0, 0.9, 0.8], 16);
        assert_eq!(split_spectrum(&s, 2.0).unwrap(), 1);
        let s = spec(&[10.0, 5.0, 0.9, 0.8], 16);
        assert_eq!(split_spectrum(&s, 2.0).unwrap(), 2);
    }

    #[test]
    fn split_on_flat_spectrum_keeps_only_the_top() {
        let s = spec(&[3.0, 3.0, 3.0, 3.0], 16);
        assert_eq!(split_spectrum(&s, 1.0).unwrap(), 1);
    }

    #[test]
    fn split_accepts_equality_as_noise() {
        let s = spec(&[10.0, 1.6, 0.9, 0.8], 16);
        assert_eq!(split_spectrum(&s, 2.0).unwrap(), 1);
    }

    #[test]
    fn split_errors_without_noise_subspace() {
        // with the inclusive bound, lambda_N itself qualifies whenever
        // t1 >= 1, so the error needs a sub-unit threshold
        let s = spec(&[10.0, 9.0, 8.0], 16);
        assert!(matches!(
            split_spectrum(&s, 0.9),
            Err(Error::NoNoiseSubspace(_))
        ));
        assert_eq!(split_spectrum(&s, 1.01).unwrap(), 2);
    }

    #[test]
    fn split_errors_on_zero_floor() {
        let s = spec(&[10.0, 1.0, 0.0], 16);
        assert!(matches!(
            split_spectrum(&s, 2.0),
            Err(Error::DegenerateFloor(_))
        ));
    }

    #[test]
    fn ml_variance_is_the_tail_mean() {
        let s = spec(&[5.0, 1.0, 1.0, 1.0], 16);
        assert_eq!(ml_noise_variance(&s, 1).unwrap(), 1.0);
        let s = spec(&[9.0, 4.0, 2.0], 16);
        assert_eq!(ml_noise_variance(&s, 1).unwrap(), 3.0);
    }

    #[test]
    fn ml_variance_rejects_empty_noise_set() {
        let s = spec(&[9.0, 4.0, 2.0], 16);
        assert!(matches!(
            ml_noise_variance(&s, 3),
            Err(Error::EmptyNoiseSet(_))
        ));
        assert!(ml_noise_variance(&s, 0).is_err());
    }

    #[test]
    fn corrected_bound_cancellation_at_t2_equals_one_over_mu() {
        let shape = shape_params(256, 512).unwrap();
        let s = spec(&[4.0, 2.0, 1.0, 0.5], 512);
        let bound = corrected_bound(
            &s,
            1,
            1.0 / shape.mu,
            &shape,
            NormalizationMode::PaperLiteral,
        )
        .unwrap();
        let expect = 2.0 / (1.0 + shape.gamma.sqrt());
        assert!((bound - expect).abs() < 1e-12);

        let bound = corrected_bound(
            &s,
            1,
            1.0 / shape.mu,
            &shape,
            NormalizationMode::SquaredEdge,
        )
        .unwrap();
        let expect = 2.0 / (1.0 + shape.gamma.sqrt()).powi(2);
        assert!((bound - expect).abs() < 1e-12);
    }

    #[test]
    fn corrected_bound_denominator_vanishes_with_gamma() {
        // gamma = 1e-6: the (1 + sqrt(N/s)) denominator is within 0.1%
        // of one, so the bound collapses to mu * T2 * lambda_{m+1}.
        // (The corrected deviation is undefined for N <= 2 at any s, so
        // the smallest usable dimension here is 3.)
        let shape = shape_params(3, 3_000_000).unwrap();
        let s = spec(&[4.0, 2.0, 1.0], 3_000_000);
        let t2 = threshold_t2(&shape, 0.97).unwrap();
        let bound =
            corrected_bound(&s, 1, t2, &shape, NormalizationMode::PaperLiteral).unwrap();
        let raw = shape.mu * t2 * 2.0;
        assert!((bound - raw).abs() < 2e-3 * raw);
    }

    #[test]
    fn corrected_bound_rejects_non_positive_spike() {
        let shape = shape_params(4, 64).unwrap();
        let s = spec(&[1.0, 0.0, 0.0, 0.0], 64);
        assert!(matches!(
            corrected_bound(&s, 1, 1e-3, &shape, NormalizationMode::PaperLiteral),
            Err(Error::DegenerateSpike(_))
        ));
    }

    #[test]
    fn estimate_on_flat_spectrum_is_min_of_constant_and_bound() {
        let c = 7.5;
        let s = spec(&[c; 32], 128);
        let est = estimate_noise(&s, 0.97, 0.97, &EstimateConfig::default()).unwrap();
        assert_eq!(est.split_index_m, 1);
        assert_eq!(est.sigma_sq_initial, c);
        assert_eq!(
            est.sigma_sq_final,
            est.sigma_sq_initial.min(est.sigma_sq_bound)
        );
        assert!(est.sigma_sq_final <= c);
    }

    #[test]
    fn estimate_truncates_rank_deficient_spectra() {
        // s = 16 samples in 20 dims: keep the top 15 eigenvalues
        let mut values = vec![0.0; 20];
        for (i, v) in values.iter_mut().enumerate().take(15) {
            *v = 4.0 - 0.2 * i as f64;
        }
        let s = spec(&values, 16);
        let est = estimate_noise(&s, 0.97, 0.97, &EstimateConfig::default()).unwrap();
        assert!(est.diagnostics.rank_truncated);
        assert!(est.diagnostics.degenerate_floor);
        assert_eq!(est.effective_n_dim, 15);
        assert_eq!(est.input_n_dim, 20);
    }

    #[test]
    fn truncation_can_land_on_an_undefined_correction() {
        // s = 5 in 8 dims truncates to (N = 4, s = 5), where the
        // corrected deviation radicand is negative
        let values = [4.0, 3.0, 2.5, 2.0, 0.0, 0.0, 0.0, 0.0];
        let s = spec(&values, 5);
        assert!(matches!(
            estimate_noise(&s, 0.97, 0.97, &EstimateConfig::default()),
            Err(Error::DegenerateShape(_))
        ));
    }

    #[test]
    fn estimate_needs_three_usable_eigenvalues() {
        let s = spec(&[4.0, 3.0, 0.0, 0.0], 3);
        assert!(matches!(
            estimate_noise(&s, 0.97, 0.97, &EstimateConfig::default()),
            Err(Error::DegenerateSpectrum(_))
        ));
    }

    #[test]
    fn estimate_rejects_levels_outside_range() {
        let s = spec(&[3.0, 2.0, 1.0, 0.5], 16);
        for alpha in [0.4, 0.9995] {
            assert!(matches!(
                estimate_noise(&s, alpha, 0.97, &EstimateConfig::default()),
                Err(Error::InvalidLevel(_))
            ));
        }
    }

    #[test]
    fn no_split_fallback_is_opt_in() {
        let s = spec(&[10.0, 9.0, 8.0, 7.0], 16);
        let mut diag = Diagnostics::default();
        let err = resolve_split(&s, 0.9, &EstimateConfig::default(), &mut diag);
        assert!(matches!(err, Err(Error::NoNoiseSubspace(_))), "{err:?}");
        assert!(!diag.no_split_fallback);

        let cfg = EstimateConfig {
            allow_no_split_fallback: true,
            ..Default::default()
        };
        let m = resolve_split(&s, 0.9, &cfg, &mut diag).unwrap();
        assert_eq!(m, 3);
        assert!(diag.no_split_fallback);
    }

    #[test]
    fn median_baseline_of_constant_spectrum_near_constant() {
        // gamma small: MP median -> 1, so the baseline is ~ the constant
        let c = 4.2;
        let s = spec(&[c; 10], 10_000);
        let est = median_baseline(&s).unwrap();
        assert!((est - c).abs() < 0.01 * c, "baseline {est}");
    }

    #[test]
    fn median_baseline_rejects_tall_spectra() {
        let s = spec(&[3.0, 2.0, 1.0], 2);
        assert!(matches!(
            median_baseline(&s),
            Err(Error::UnsupportedRegime(_))
        ));
    }
}

//! Report types emitted by the service and the CLI, with stable JSON and
//! CSV renderings.
//!
//! Every report embeds the artifact version and the complete effective
//! configuration, and rendering is deterministic: re-running a command
//! with identical inputs reproduces the bytes. CSV cells carry full
//! precision (17 significant digits); JSON uses shortest round-trip
//! float encoding, which is lossless.

use serde::{Deserialize, Serialize};

use crate::estimator::{Diagnostics, EstimateConfig, NoiseEstimate};
use crate::simulation::{ComparisonReport, CoverageReport};
use crate::{Result, ARTIFACT_VERSION};

/// 17-significant-digit decimal rendering used in CSV cells.
pub fn fmt_full(x: f64) -> String {
    format!("{x:.16e}")
}

/// Output format selector shared by the CLI and the service.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(crate::Error::InvalidArgument(format!(
                "unknown format {other:?}; expected json or csv"
            ))),
        }
    }
}

/// Full estimation report: every estimate field plus the shape constants
/// and thresholds for auditability.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateReport {
    pub version: String,
    /// Where the samples came from (path or a synthetic label).
    pub input: Option<String>,
    pub alpha1: f64,
    pub alpha2: f64,
    pub mode: String,
    pub allow_no_split_fallback: bool,
    pub n_dim: usize,
    pub n_samples: usize,
    pub effective_n_dim: usize,
    pub gamma: f64,
    pub mu: f64,
    pub xi: f64,
    pub xi_corrected: f64,
    pub t1: f64,
    pub t2: f64,
    pub split_index_m: usize,
    pub sigma_sq_initial: f64,
    pub sigma_sq_bound: f64,
    pub sigma_sq_final: f64,
    /// Std-dev scale companions of the three variance figures.
    pub sigma_initial: f64,
    pub sigma_bound: f64,
    pub sigma_final: f64,
    pub bound_active: bool,
    pub diagnostics: Diagnostics,
    /// Ground-truth injected noise level, when known (patch workflow).
    pub true_sigma: Option<f64>,
}

impl EstimateReport {
    pub fn new(
        estimate: &NoiseEstimate,
        config: &EstimateConfig,
        input: Option<String>,
        true_sigma: Option<f64>,
    ) -> Self {
        let thr = &estimate.thresholds;
        let shape = &thr.shape;
        EstimateReport {
            version: ARTIFACT_VERSION.to_string(),
            input,
            alpha1: thr.alpha1,
            alpha2: thr.alpha2,
            mode: config.mode.as_str().to_string(),
            allow_no_split_fallback: config.allow_no_split_fallback,
            n_dim: estimate.input_n_dim,
            n_samples: shape.n_samples,
            effective_n_dim: estimate.effective_n_dim,
            gamma: shape.gamma,
            mu: shape.mu,
            xi: shape.xi,
            xi_corrected: shape.xi_corrected,
            t1: thr.t1,
            t2: thr.t2,
            split_index_m: estimate.split_index_m,
            sigma_sq_initial: estimate.sigma_sq_initial,
            sigma_sq_bound: estimate.sigma_sq_bound,
            sigma_sq_final: estimate.sigma_sq_final,
            sigma_initial: estimate.sigma_sq_initial.max(0.0).sqrt(),
            sigma_bound: estimate.sigma_sq_bound.max(0.0).sqrt(),
            sigma_final: estimate.sigma_sq_final.max(0.0).sqrt(),
            bound_active: estimate.bound_active,
            diagnostics: estimate.diagnostics,
            true_sigma,
        }
    }

    /// Two-column key,value rendering.
    pub fn to_csv(&self) -> String {
        let mut out = provenance_header(&serde_json::json!({
            "input": self.input,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "mode": self.mode,
            "allow_no_split_fallback": self.allow_no_split_fallback,
        }));
        out.push_str("key,value\n");
        let mut push = |k: &str, v: String| {
            out.push_str(k);
            out.push(',');
            out.push_str(&v);
            out.push('\n');
        };
        push("n_dim", self.n_dim.to_string());
        push("n_samples", self.n_samples.to_string());
        push("effective_n_dim", self.effective_n_dim.to_string());
        push("gamma", fmt_full(self.gamma));
        push("mu", fmt_full(self.mu));
        push("xi", fmt_full(self.xi));
        push("xi_corrected", fmt_full(self.xi_corrected));
        push("t1", fmt_full(self.t1));
        push("t2", fmt_full(self.t2));
        push("split_index_m", self.split_index_m.to_string());
        push("sigma_sq_initial", fmt_full(self.sigma_sq_initial));
        push("sigma_sq_bound", fmt_full(self.sigma_sq_bound));
        push("sigma_sq_final", fmt_full(self.sigma_sq_final));
        push("sigma_initial", fmt_full(self.sigma_initial));
        push("sigma_bound", fmt_full(self.sigma_bound));
        push("sigma_final", fmt_full(self.sigma_final));
        push("bound_active", self.bound_active.to_string());
        push(
            "no_split_fallback",
            self.diagnostics.no_split_fallback.to_string(),
        );
        push("rank_truncated", self.diagnostics.rank_truncated.to_string());
        push(
            "degenerate_floor",
            self.diagnostics.degenerate_floor.to_string(),
        );
        if let Some(t) = self.true_sigma {
            push("true_sigma", fmt_full(t));
        }
        out
    }
}

/// Quantile lookup report for the Tracy-Widom table command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwTableReport {
    pub version: String,
    pub points: Vec<TwPoint>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwPoint {
    pub p: f64,
    pub z: f64,
}

impl TwTableReport {
    pub fn build(probabilities: &[f64]) -> Result<Self> {
        let mut points = Vec::with_capacity(probabilities.len());
        for &p in probabilities {
            points.push(TwPoint {
                p,
                z: crate::rmt::tw::tw1_quantile(p)?,
            });
        }
        Ok(TwTableReport {
            version: ARTIFACT_VERSION.to_string(),
            points,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = provenance_header(&serde_json::json!({
            "probabilities": self.points.iter().map(|pt| pt.p).collect::<Vec<_>>(),
        }));
        out.push_str("p,z\n");
        for pt in &self.points {
            out.push_str(&format!("{},{}\n", fmt_full(pt.p), fmt_full(pt.z)));
        }
        out
    }
}

fn provenance_header(config: &serde_json::Value) -> String {
    format!(
        "# noisefloor {}\n# config: {}\n",
        ARTIFACT_VERSION,
        serde_json::to_string(config).expect("config serializes")
    )
}

/// CSV rendering of the coverage experiment: provenance header, one
/// header row, one data row per alpha level.
pub fn coverage_csv(report: &CoverageReport) -> String {
    let mut out = provenance_header(
        &serde_json::to_value(&report.config).expect("config serializes"),
    );
    out.push_str("alpha1,successes,trials,rate,std_error\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_full(row.alpha1),
            row.successes,
            row.trials,
            fmt_full(row.rate),
            fmt_full(row.std_error),
        ));
    }
    out
}

/// CSV rendering of the comparison experiment: one data row per sigma
/// level, then MAD and MSE summary rows.
pub fn comparison_csv(report: &ComparisonReport) -> String {
    let mut out = provenance_header(
        &serde_json::to_value(&report.config).expect("config serializes"),
    );
    out.push_str("sigma_true,sigma_median,sigma_ml,sigma_min_rule,fallback_count\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_full(row.sigma_true),
            fmt_full(row.mean_median),
            fmt_full(row.mean_ml),
            fmt_full(row.mean_min_rule),
            row.fallback_count,
        ));
    }
    let s = &report.summary;
    out.push_str(&format!(
        "MAD,{},{},{},\n",
        fmt_full(s.mad_median),
        fmt_full(s.mad_ml),
        fmt_full(s.mad_min_rule),
    ));
    out.push_str(&format!(
        "MSE,{},{},{},\n",
        fmt_full(s.mse_median),
        fmt_full(s.mse_ml),
        fmt_full(s.mse_min_rule),
    ));
    out
}

/// Serialize any report value as pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

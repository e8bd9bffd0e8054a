//! Sample covariance construction and eigenvalue spectra.
//!
//! Layout convention, fixed across all I/O: rows are observations,
//! columns are coordinates.

pub mod eigen;

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::{Error, Result};

/// Eigenvalues below `RANK_TOLERANCE * lambda_1` are treated as
/// numerically zero by downstream consumers.
pub const RANK_TOLERANCE: f64 = 1e-12;

/// A set of observation vectors, one per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    data: Matrix,
}

impl SampleMatrix {
    /// Validates shape and finiteness; needs at least two observations
    /// because the covariance normalization divides by s - 1.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::InsufficientSamples(format!(
                "got {} observation(s), need at least 2",
                rows.len()
            )));
        }
        let data = Matrix::from_rows(rows)?;
        Ok(SampleMatrix { data })
    }

    pub(crate) fn from_matrix(data: Matrix) -> Result<Self> {
        if data.rows() < 2 {
            return Err(Error::InsufficientSamples(format!(
                "got {} observation(s), need at least 2",
                data.rows()
            )));
        }
        Ok(SampleMatrix { data })
    }

    pub fn n_dim(&self) -> usize {
        self.data.cols()
    }

    pub fn n_samples(&self) -> usize {
        self.data.rows()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.data.row(i)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.data
    }
}

/// Which normalization the eigenvalues carry: the covariance scale
/// divides the centered scatter matrix by (s - 1); the Wishart scale is
/// the raw scatter matrix, i.e. (s - 1) times the covariance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    Covariance,
    Wishart,
}

/// Descending eigenvalues plus the shape they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    n_dim: usize,
    n_samples: usize,
    scale: Scale,
}

impl Spectrum {
    /// `values` must be finite, descending, and of length `n_dim`.
    pub fn new(values: Vec<f64>, n_dim: usize, n_samples: usize, scale: Scale) -> Result<Self> {
        if values.len() != n_dim || n_dim == 0 {
            return Err(Error::InvalidArgument(format!(
                "spectrum length {} does not match n_dim {}",
                values.len(),
                n_dim
            )));
        }
        if n_samples < 2 {
            return Err(Error::InsufficientSamples(
                "spectrum needs n_samples >= 2".into(),
            ));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "non-finite eigenvalue at index {i}"
                )));
            }
            if i > 0 && values[i - 1] < *v {
                return Err(Error::InvalidArgument(format!(
                    "eigenvalues not descending at index {i}"
                )));
            }
        }
        Ok(Spectrum {
            values,
            n_dim,
            n_samples,
            scale,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    /// Threshold below which eigenvalues count as numerically zero.
    pub fn rank_tolerance(&self) -> f64 {
        RANK_TOLERANCE * self.values[0].max(0.0)
    }

    /// Keep only the `keep` largest eigenvalues, reinterpreting the
    /// dimension accordingly.
    pub(crate) fn truncated(&self, keep: usize) -> Spectrum {
        Spectrum {
            values: self.values[..keep].to_vec(),
            n_dim: keep,
            n_samples: self.n_samples,
            scale: self.scale,
        }
    }
}

/// Sample covariance of the observations: the centered outer-product
/// average `(1/(s-1)) sum_i (d_i - mean)(d_i - mean)^T`. Symmetric and
/// positive semidefinite by construction.
pub fn sample_covariance(data: &SampleMatrix) -> Matrix {
    let n = data.n_dim();
    let s = data.n_samples();
    let mut mean = vec![0.0; n];
    for i in 0..s {
        for (m, &x) in mean.iter_mut().zip(data.row(i)) {
            *m += x;
        }
    }
    for m in &mut mean {
        *m /= s as f64;
    }
    let mut cov = Matrix::zeros(n, n);
    let mut centered = vec![0.0; n];
    for i in 0..s {
        for ((c, &x), &m) in centered.iter_mut().zip(data.row(i)).zip(&mean) {
            *c = x - m;
        }
        for j in 0..n {
            let cj = centered[j];
            if cj == 0.0 {
                continue;
            }
            let row = cov.row_mut(j);
            for (k, &ck) in centered.iter().enumerate().skip(j) {
                row[k] += cj * ck;
            }
        }
    }
    let norm = 1.0 / (s as f64 - 1.0);
    for j in 0..n {
        for k in j..n {
            let v = cov.at(j, k) * norm;
            cov.set(j, k, v);
            cov.set(k, j, v);
        }
    }
    cov
}

/// Full descending eigenvalue spectrum of a symmetric matrix, labeled
/// with the sample count it came from. The matrix must be symmetric
/// within a 1e-10 relative tolerance. Eigenvectors are not exposed; the
/// estimator needs only values.
pub fn eigen_spectrum(m: &Matrix, n_samples: usize) -> Result<Spectrum> {
    let values = eigen::sym_eigenvalues(m)?;
    Spectrum::new(values, m.rows(), n_samples, Scale::Covariance)
}

/// Convert between covariance and Wishart scales by multiplying or
/// dividing every eigenvalue by (s - 1). Idempotent when the spectrum is
/// already on the target scale.
pub fn rescale(spec: &Spectrum, target: Scale) -> Spectrum {
    if spec.scale == target {
        return spec.clone();
    }
    let factor = match target {
        Scale::Wishart => spec.n_samples as f64 - 1.0,
        Scale::Covariance => 1.0 / (spec.n_samples as f64 - 1.0),
    };
    Spectrum {
        values: spec.values.iter().map(|v| v * factor).collect(),
        n_dim: spec.n_dim,
        n_samples: spec.n_samples,
        scale: target,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covariance_of_two_opposite_points() {
        let data = SampleMatrix::from_rows(&[vec![1.0, 0.0], vec![-1.0, 0.0]]).unwrap();
        let cov = sample_covariance(&data);
        assert_eq!(cov.at(0, 0), 2.0);
        assert_eq!(cov.at(0, 1), 0.0);
        assert_eq!(cov.at(1, 0), 0.0);
        assert_eq!(cov.at(1, 1), 0.0);
    }

    #[test]
    fn covariance_of_repeated_row_is_zero() {
        let row = vec![3.0, -1.5, 2.25];
        let data = SampleMatrix::from_rows(&[row.clone(), row.clone(), row]).unwrap();
        let cov = sample_covariance(&data);
        assert!(cov.as_slice().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn three_rows_in_five_dims_has_rank_at_most_two() {
        let rng = crate::rng::CounterRng::new(5, 0, 0);
        let rows: Vec<Vec<f64>> = (0..3)
            .map(|i| (0..5).map(|j| rng.normal_at((i * 5 + j) as u64)).collect())
            .collect();
        let data = SampleMatrix::from_rows(&rows).unwrap();
        let spec = eigen_spectrum(&sample_covariance(&data), 3).unwrap();
        let tol = spec.rank_tolerance();
        let rank = spec.values().iter().filter(|&&v| v > tol).count();
        assert!(rank <= 2, "rank {rank}, values {:?}", spec.values());
    }

    #[test]
    fn covariance_is_translation_invariant() {
        let rng = crate::rng::CounterRng::new(11, 0, 0);
        let rows: Vec<Vec<f64>> = (0..6)
            .map(|i| (0..4).map(|j| rng.normal_at((i * 4 + j) as u64)).collect())
            .collect();
        let shifted: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| r.iter().zip([10.0, -3.0, 0.5, 97.0]).map(|(x, c)| x + c).collect())
            .collect();
        let a = sample_covariance(&SampleMatrix::from_rows(&rows).unwrap());
        let b = sample_covariance(&SampleMatrix::from_rows(&shifted).unwrap());
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn covariance_is_row_permutation_invariant() {
        let rows = vec![
            vec![1.0, 2.0],
            vec![-0.5, 4.0],
            vec![3.5, 0.0],
            vec![2.0, 2.0],
        ];
        let mut shuffled = rows.clone();
        shuffled.swap(0, 3);
        shuffled.swap(1, 2);
        let a = sample_covariance(&SampleMatrix::from_rows(&rows).unwrap());
        let b = sample_covariance(&SampleMatrix::from_rows(&shuffled).unwrap());
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn eigen_spectrum_diagonal_case() {
        let m = Matrix::from_rows(&[
            vec![3.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ])
        .unwrap();
        let spec = eigen_spectrum(&m, 10).unwrap();
        assert_eq!(spec.values(), &[3.0, 2.0, 1.0]);
    }

    #[test]
    fn eigen_spectrum_known_two_by_two() {
        let m = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let spec = eigen_spectrum(&m, 4).unwrap();
        assert!((spec.values()[0] - 3.0).abs() < 1e-12);
        assert!((spec.values()[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_spectrum_matches_trace_and_frobenius_oracle() {
        // independent characteristic check on a random symmetric 64x64
        let rng = crate::rng::CounterRng::new(64, 0, 0);
        let n = 64;
        let mut m = Matrix::zeros(n, n);
        let mut idx = 0;
        for i in 0..n {
            for j in i..n {
                let v = rng.normal_at(idx);
                idx += 1;
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        let spec = eigen_spectrum(&m, 100).unwrap();
        let sum: f64 = spec.values().iter().sum();
        let sum_sq: f64 = spec.values().iter().map(|v| v * v).sum();
        let fro2 = m.frobenius_norm().powi(2);
        assert!((sum - m.trace()).abs() <= 1e-9 * m.trace().abs().max(1.0));
        assert!((sum_sq - fro2).abs() <= 1e-9 * fro2);
    }

    #[test]
    fn asymmetric_matrix_is_rejected() {
        let m = Matrix::from_rows(&[vec![1.0, 1e-3], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            eigen_spectrum(&m, 5),
            Err(Error::InvalidMatrix(_))
        ));
    }

    #[test]
    fn rescale_multiplies_by_sample_factor() {
        let spec = Spectrum::new(vec![8.0, 4.0, 0.0], 3, 5, Scale::Covariance).unwrap();
        let w = rescale(&spec, Scale::Wishart);
        assert_eq!(w.values(), &[32.0, 16.0, 0.0]);
        assert_eq!(w.scale(), Scale::Wishart);
    }

    #[test]
    fn rescale_is_idempotent_and_invertible() {
        let spec = Spectrum::new(vec![8.0, 4.0, 1.0], 3, 5, Scale::Wishart).unwrap();
        let same = rescale(&spec, Scale::Wishart);
        assert_eq!(same, spec);
        let back = rescale(&rescale(&spec, Scale::Covariance), Scale::Wishart);
        for (a, b) in back.values().iter().zip(spec.values()) {
            assert!((a - b).abs() <= 1e-15 * b.abs());
        }
    }

    #[test]
    fn single_observation_is_rejected() {
        assert!(matches!(
            SampleMatrix::from_rows(&[vec![1.0, 2.0]]),
            Err(Error::InsufficientSamples(_))
        ));
    }

    #[test]
    fn ragged_and_non_finite_rows_are_rejected() {
        assert!(SampleMatrix::from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(SampleMatrix::from_rows(&[vec![1.0], vec![f64::NAN]]).is_err());
    }
}

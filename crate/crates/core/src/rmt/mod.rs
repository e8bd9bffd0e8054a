//! Random-matrix-theory quantities: the Tracy-Widom (beta=1) law, the
//! Marchenko-Pastur law, and the centering/scaling constants for the
//! largest Wishart eigenvalue.

pub mod mp;
pub mod tw;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Asymptotic constants derived from the matrix shape (N, s).
///
/// `mu` and `xi` center and scale the largest Wishart eigenvalue so that
/// it converges to the Tracy-Widom law; `xi_corrected` is the
/// finite-sample deviation used by the overestimation threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeParams {
    pub n_dim: usize,
    pub n_samples: usize,
    /// Aspect ratio N / s.
    pub gamma: f64,
    pub mu: f64,
    pub xi: f64,
    pub xi_corrected: f64,
}

/// Centering and scaling constants (mu, xi) for the shape (N, s), using
/// the half-integer offsets (s - 1/2, N - 1/2). Symmetric in N and s.
pub fn tw_centering(n_dim: usize, n_samples: usize) -> Result<(f64, f64)> {
    if n_dim < 1 {
        return Err(Error::InvalidArgument("n_dim must be >= 1".into()));
    }
    if n_samples < 2 {
        return Err(Error::InsufficientSamples(format!(
            "n_samples = {} but the centering constants need n_samples >= 2",
            n_samples
        )));
    }
    let a = n_samples as f64 - 0.5;
    let b = n_dim as f64 - 0.5;
    let root_sum = a.sqrt() + b.sqrt();
    let mu = root_sum * root_sum;
    let xi = root_sum * (1.0 / a.sqrt() + 1.0 / b.sqrt()).cbrt();
    Ok((mu, xi))
}

/// Build the full shape constants for (N, s).
///
/// Fails with [`Error::DegenerateShape`] when the finite-sample
/// correction `xi_corrected` is undefined, i.e. when
/// `xi^2 - (2 / (N s)) mu^2 <= 0`. This genuinely happens at very small
/// shapes (for example N = s = 2, or N = 256 with s = 3); the plain
/// centering constants are still available through [`tw_centering`].
pub fn shape_params(n_dim: usize, n_samples: usize) -> Result<ShapeParams> {
    let (mu, xi) = tw_centering(n_dim, n_samples)?;
    let ns = (n_dim as f64) * (n_samples as f64);
    let radicand = xi * xi - 2.0 / ns * mu * mu;
    if radicand <= 0.0 {
        return Err(Error::DegenerateShape(format!(
            "corrected deviation undefined for (N = {}, s = {}): \
             xi^2 - (2/(N*s)) mu^2 = {:.6e} <= 0",
            n_dim, n_samples, radicand
        )));
    }
    let xi_corrected = (ns / (2.0 + ns) * radicand).sqrt();
    Ok(ShapeParams {
        n_dim,
        n_samples,
        gamma: n_dim as f64 / n_samples as f64,
        mu,
        xi,
        xi_corrected,
    })
}

impl ShapeParams {
    pub fn new(n_dim: usize, n_samples: usize) -> Result<Self> {
        shape_params(n_dim, n_samples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centering_symmetric_small_case() {
        // (sqrt(1.5) + sqrt(1.5))^2 = 4 * 1.5 = 6
        let (mu, _) = tw_centering(2, 2).unwrap();
        assert!((mu - 6.0).abs() < 1e-12);
    }

    #[test]
    fn centering_matches_oracle_at_256_3() {
        // direct high-precision evaluation of the closed form
        let (mu, xi) = tw_centering(256, 3).unwrap();
        assert!((mu - 308.547007824401).abs() < 1e-9, "mu = {mu}");
        assert!((xi - 15.559384289252).abs() < 1e-9, "xi = {xi}");
    }

    #[test]
    fn centering_is_symmetric_in_dims() {
        for &(n, s) in &[(3, 7), (64, 256), (100, 400), (10, 2000)] {
            let (mu_a, xi_a) = tw_centering(n, s).unwrap();
            let (mu_b, xi_b) = tw_centering(s, n).unwrap();
            assert!((mu_a - mu_b).abs() <= 1e-12 * mu_a);
            assert!((xi_a - xi_b).abs() <= 1e-12 * xi_a);
        }
    }

    #[test]
    fn mu_increases_with_dimension() {
        for &(n, s) in &[(1, 2), (5, 9), (64, 256), (255, 512)] {
            let (mu_lo, _) = tw_centering(n, s).unwrap();
            let (mu_hi, _) = tw_centering(n + 1, s).unwrap();
            assert!(mu_hi > mu_lo);
        }
    }

    #[test]
    fn shape_params_values_match_oracle() {
        let sp = shape_params(256, 512).unwrap();
        assert!((sp.mu - 1490.016597319868).abs() < 1e-8);
        assert!((sp.xi - 18.312795555069).abs() < 1e-9);
        assert!((sp.xi_corrected - 17.36309559279874).abs() < 1e-9);
        assert_eq!(sp.gamma, 0.5);

        let sp = shape_params(10, 2000).unwrap();
        assert!((sp.xi_corrected - 24.61142008001221).abs() < 1e-9);
    }

    #[test]
    fn correction_shrinks_the_scale() {
        for &(n, s) in &[(16, 16), (64, 256), (100, 400), (256, 512), (10, 2000)] {
            let sp = shape_params(n, s).unwrap();
            assert!(sp.xi_corrected > 0.0 && sp.xi_corrected <= sp.xi);
        }
    }

    #[test]
    fn degenerate_shapes_are_rejected() {
        // The correction radicand is negative for these shapes, including
        // the (N = 256, s = 3) configuration.
        for &(n, s) in &[(2, 2), (256, 3), (16, 4)] {
            match shape_params(n, s) {
                Err(Error::DegenerateShape(_)) => {}
                other => panic!("expected degenerate shape for ({n}, {s}), got {other:?}"),
            }
        }
    }

    #[test]
    fn preconditions_are_enforced() {
        assert!(matches!(
            tw_centering(0, 10),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            tw_centering(10, 1),
            Err(Error::InsufficientSamples(_))
        ));
    }
}

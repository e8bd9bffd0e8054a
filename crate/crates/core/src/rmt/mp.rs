//! Marchenko-Pastur law quantities: support edges and the median of the
//! unit-variance law, which backs the classical median-rescaling
//! baseline estimator.

use crate::{Error, Result};

/// Support edges of the Marchenko-Pastur law with ratio `gamma` and
/// variance `sigma_sq`: `((1 - sqrt(gamma))^2, (1 + sqrt(gamma))^2)`
/// scaled by `sigma_sq`.
pub fn mp_edges(gamma: f64, sigma_sq: f64) -> Result<(f64, f64)> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "mp_edges needs finite gamma >= 0, got {gamma}"
        )));
    }
    if !sigma_sq.is_finite() || sigma_sq <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "mp_edges needs sigma_sq > 0, got {sigma_sq}"
        )));
    }
    let r = gamma.sqrt();
    Ok(((1.0 - r) * (1.0 - r) * sigma_sq, (1.0 + r) * (1.0 + r) * sigma_sq))
}

/// Median of the unit-variance Marchenko-Pastur law with ratio
/// `gamma` in (0, 1], by quadrature of the density and bisection on the
/// CDF. The result lies strictly inside the support.
pub fn mp_median(gamma: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma <= 0.0 || gamma > 1.0 {
        return Err(Error::InvalidArgument(format!(
            "mp_median is defined for gamma in (0, 1], got {gamma}"
        )));
    }
    let half = std::f64::consts::FRAC_PI_2;
    let (mut lo, mut hi) = (0.0_f64, half);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mp_cdf_theta(gamma, mid) < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta = 0.5 * (lo + hi);
    let (a, b) = mp_edges(gamma, 1.0)?;
    let s = theta.sin();
    Ok(a + (b - a) * s * s)
}

/// CDF of the unit-variance MP law at the support point parameterized by
/// `x = a + (b - a) sin^2(theta)`. The substitution removes the
/// square-root edge singularities (and the 1/x pole at gamma = 1), so the
/// integrand handed to the adaptive rule is smooth.
pub(crate) fn mp_cdf_theta(gamma: f64, theta: f64) -> f64 {
    if theta <= 0.0 {
        return 0.0;
    }
    let g = |t: f64| mp_integrand_theta(gamma, t);
    adaptive_simpson(&g, 0.0, theta, 1e-9)
}

fn mp_integrand_theta(gamma: f64, theta: f64) -> f64 {
    let r = gamma.sqrt();
    let a = (1.0 - r) * (1.0 - r);
    let width = 4.0 * r; // b - a
    let s = theta.sin();
    let c = theta.cos();
    let x = a + width * s * s;
    if x <= 0.0 {
        // only reachable at gamma = 1, theta = 0, where the limit is finite
        return 2.0 / std::f64::consts::PI * width / 4.0 / gamma * c * c * 2.0;
    }
    // density * dx/dtheta = sqrt((b-x)(x-a)) / (2 pi gamma x) * width * sin(2 theta)
    //                     = width^2 sin^2 cos^2 / (pi gamma x)
    width * width * s * s * c * c / (std::f64::consts::PI * gamma * x)
}

/// Recursive adaptive Simpson quadrature with absolute tolerance `tol`.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 60)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn edges_are_exact_for_simple_ratios() {
        assert_eq!(mp_edges(0.0, 7.0).unwrap(), (7.0, 7.0));
        assert_eq!(mp_edges(1.0, 1.0).unwrap(), (0.0, 4.0));
        assert_eq!(mp_edges(0.25, 1.0).unwrap(), (0.25, 2.25));
    }

    #[test]
    fn edges_lower_never_exceeds_upper() {
        for i in 0..100 {
            let gamma = i as f64 * 0.05;
            let (lo, hi) = mp_edges(gamma, 3.0).unwrap();
            assert!(lo <= hi);
            assert_eq!(lo == hi, gamma == 0.0);
        }
    }

    #[test]
    fn edges_reject_bad_arguments() {
        assert!(mp_edges(-0.1, 1.0).is_err());
        assert!(mp_edges(f64::NAN, 1.0).is_err());
        assert!(mp_edges(0.5, 0.0).is_err());
    }

    #[test]
    fn density_integrates_to_one() {
        for &gamma in &[0.1, 0.5, 0.9] {
            let total = mp_cdf_theta(gamma, FRAC_PI_2);
            assert!(
                (total - 1.0).abs() < 1e-8,
                "gamma = {gamma}: integral = {total}"
            );
        }
    }

    #[test]
    fn cdf_at_upper_edge_is_one() {
        let total = mp_cdf_theta(1.0, FRAC_PI_2);
        assert!((total - 1.0).abs() < 1e-8, "integral = {total}");
    }

    #[test]
    fn median_tends_to_one_as_support_collapses() {
        // support shrinks to {1} as gamma -> 0+
        assert!((mp_median(1e-6).unwrap() - 1.0).abs() < 1e-2);
        assert!((mp_median(1e-3).unwrap() - 1.0).abs() < 0.1);
    }

    #[test]
    fn median_matches_independent_quadrature_oracle() {
        // scipy adaptive quadrature + brentq on the raw-density CDF
        assert!((mp_median(0.5).unwrap() - 0.830465881581).abs() < 1e-6);
        assert!((mp_median(0.25).unwrap() - 0.916004070687).abs() < 1e-6);
        assert!((mp_median(1.0).unwrap() - 0.652775941634).abs() < 1e-6);
        assert!((mp_median(0.0625).unwrap() - 0.979127422406).abs() < 1e-6);
    }

    #[test]
    fn median_is_inside_the_support() {
        for i in 1..=20 {
            let gamma = i as f64 / 20.0;
            let med = mp_median(gamma).unwrap();
            let (a, b) = mp_edges(gamma, 1.0).unwrap();
            assert!(med > a && med < b, "gamma = {gamma}: median {med}");
        }
    }

    #[test]
    fn median_rejects_out_of_range_ratios() {
        for gamma in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(mp_median(gamma).is_err(), "gamma = {gamma}");
        }
    }
}

//! Tracy-Widom (beta=1) distribution function and quantiles.
//!
//! There is no closed form for F_TW1, so evaluation is backed by a dense
//! precomputed table of (z, F_TW1(z)) pairs generated offline from the
//! Hastings-McLeod solution of Painleve II and validated against
//! published percentile tables and an independent Fredholm-determinant
//! evaluation (see `tools/gen_tw1_table.py` and the header of
//! `data/tw1_cdf.txt`). The CDF interpolates the table with a monotone
//! cubic (Fritsch-Carlson) scheme; quantiles invert it by bisection.
//!
//! Outside the tabulated span the CDF is extended with the standard tail
//! shapes, `exp(-|z|^3/24)` on the left and `exp(-(2/3) z^{3/2})` on the
//! right, matched continuously at the table edges. The extensions exist
//! for reporting only; the estimator restricts probability levels to
//! ranges that stay interior to the table.

use std::sync::OnceLock;

use crate::{Error, Result};

const EMBEDDED_TABLE: &str = include_str!("../../data/tw1_cdf.txt");

/// Monotone CDF samples of the Tracy-Widom beta=1 law.
#[derive(Debug, Clone)]
pub struct TwTable {
    z: Vec<f64>,
    p: Vec<f64>,
    /// Fritsch-Carlson tangents, one per knot.
    slope: Vec<f64>,
}

impl TwTable {
    /// Parse the two-column text format: `z p` per line, ASCII decimal,
    /// strictly increasing z, `#` comment lines allowed.
    pub fn parse(text: &str) -> Result<TwTable> {
        let mut z = Vec::new();
        let mut p = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (az, ap) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Parse(format!(
                        "tw table line {}: expected two columns",
                        lineno + 1
                    )))
                }
            };
            let zi: f64 = az.parse().map_err(|_| {
                Error::Parse(format!("tw table line {}: bad z value", lineno + 1))
            })?;
            let pi: f64 = ap.parse().map_err(|_| {
                Error::Parse(format!("tw table line {}: bad p value", lineno + 1))
            })?;
            z.push(zi);
            p.push(pi);
        }
        TwTable::new(z, p)
    }

    pub fn new(z: Vec<f64>, p: Vec<f64>) -> Result<TwTable> {
        if z.len() != p.len() || z.len() < 4 {
            return Err(Error::Parse("tw table: need >= 4 (z, p) pairs".into()));
        }
        for i in 0..z.len() {
            if !z[i].is_finite() || !(0.0..=1.0).contains(&p[i]) {
                return Err(Error::Parse(format!("tw table: bad pair at index {i}")));
            }
            if i > 0 && (z[i] <= z[i - 1] || p[i] <= p[i - 1]) {
                return Err(Error::Parse(format!(
                    "tw table: not strictly increasing at index {i}"
                )));
            }
        }
        if z[0] > -5.5 || *z.last().unwrap() < 3.5 {
            return Err(Error::Parse(
                "tw table: grid must span at least [-5.5, 3.5]".into(),
            ));
        }
        let slope = fritsch_carlson_slopes(&z, &p);
        Ok(TwTable { z, p, slope })
    }

    /// The table shipped inside the artifact.
    pub fn embedded() -> &'static TwTable {
        static TABLE: OnceLock<TwTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            TwTable::parse(EMBEDDED_TABLE).expect("embedded tw table is valid")
        })
    }

    /// Render in the same two-column text format accepted by [`parse`].
    ///
    /// [`parse`]: TwTable::parse
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.z.len() * 28);
        for (zi, pi) in self.z.iter().zip(&self.p) {
            out.push_str(&format!("{zi} {pi:.16e}\n"));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn span(&self) -> (f64, f64) {
        (self.z[0], *self.z.last().unwrap())
    }

    /// F_TW1(z). Monotone non-decreasing; clamped tail extensions apply
    /// outside the tabulated span.
    pub fn cdf(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "tw1 cdf needs a finite argument, got {z}"
            )));
        }
        let (zmin, zmax) = self.span();
        if z < zmin {
            // left tail ~ exp(-|z|^3 / 24), matched at the edge
            let p = self.p[0] * ((zmin.abs().powi(3) - z.abs().powi(3)) / 24.0).exp();
            return Ok(p.clamp(0.0, 1.0));
        }
        if z > zmax {
            // right tail ~ exp(-(2/3) z^{3/2}), matched at the edge
            let q = *self.p.last().unwrap();
            let t = (1.0 - q) * (2.0 / 3.0 * (zmax.powf(1.5) - z.powf(1.5))).exp();
            return Ok((1.0 - t).clamp(0.0, 1.0));
        }
        Ok(self.interp(z))
    }

    /// F_TW1^{-1}(p) for p in (0, 1), by bisection on the monotone
    /// interpolant; tail formulas are inverted outside the table range.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !p.is_finite() || p <= 0.0 || p >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "tw1 quantile needs p in (0, 1), got {p}"
            )));
        }
        let (zmin, zmax) = self.span();
        let (pmin, pmax) = (self.p[0], *self.p.last().unwrap());
        if p <= pmin {
            let cube = zmin.abs().powi(3) + 24.0 * (pmin / p).ln();
            return Ok(-cube.cbrt());
        }
        if p >= pmax {
            let arg = zmax.powf(1.5) + 1.5 * ((1.0 - pmax) / (1.0 - p)).ln();
            return Ok(arg.powf(2.0 / 3.0));
        }
        let (mut lo, mut hi) = (zmin, zmax);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.interp(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-14 * (1.0 + mid.abs()) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Monotone cubic Hermite evaluation; caller guarantees z in span.
    fn interp(&self, z: f64) -> f64 {
        let i = match self.z.binary_search_by(|v| v.partial_cmp(&z).unwrap()) {
            Ok(i) => return self.p[i],
            Err(i) => i - 1,
        };
        let h = self.z[i + 1] - self.z[i];
        let t = (z - self.z[i]) / h;
        let (p0, p1) = (self.p[i], self.p[i + 1]);
        let (m0, m1) = (self.slope[i] * h, self.slope[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let v = p0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + m0 * (t3 - 2.0 * t2 + t)
            + p1 * (-2.0 * t3 + 3.0 * t2)
            + m1 * (t3 - t2);
        v.clamp(0.0, 1.0)
    }
}

/// Fritsch-Carlson monotone tangents for strictly increasing data.
fn fritsch_carlson_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut secant = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        secant.push((y[i + 1] - y[i]) / (x[i + 1] - x[i]));
    }
    let mut m = vec![0.0; n];
    m[0] = secant[0];
    m[n - 1] = secant[n - 2];
    for i in 1..n - 1 {
        let (d0, d1) = (secant[i - 1], secant[i]);
        if d0 * d1 <= 0.0 {
            m[i] = 0.0;
        } else {
            // weighted harmonic mean keeps the interpolant monotone
            let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
            let w0 = 2.0 * h1 + h0;
            let w1 = h1 + 2.0 * h0;
            m[i] = (w0 + w1) / (w0 / d0 + w1 / d1);
        }
    }
    m
}

/// F_TW1(z) using the embedded table.
pub fn tw1_cdf(z: f64) -> Result<f64> {
    TwTable::embedded().cdf(z)
}

/// F_TW1^{-1}(p) using the embedded table.
pub fn tw1_quantile(p: f64) -> Result<f64> {
    TwTable::embedded().quantile(p)
}

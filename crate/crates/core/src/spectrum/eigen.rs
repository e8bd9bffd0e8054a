//! Symmetric eigensolvers.
//!
//! The production path is Householder tridiagonalization followed by the
//! implicit-shift QL iteration (the classic EISPACK tred2/tql2 pair),
//! which handles the dense PSD covariance matrices this crate works with
//! (N up to ~1024) in O(N^3) with a small constant. A cyclic Jacobi
//! solver is kept alongside as a slower, foolproof reference for
//! cross-validation; it is not used on any hot path.

use crate::matrix::Matrix;
use crate::{Error, Result};

/// Relative symmetry tolerance accepted by the solvers.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// Maximum QL iterations per eigenvalue before giving up.
const MAX_QL_ITERATIONS: usize = 50;

/// All eigenvalues of a symmetric matrix, sorted descending.
pub fn sym_eigenvalues(m: &Matrix) -> Result<Vec<f64>> {
    let (mut a, n) = checked_copy(m)?;
    if n == 1 {
        return Ok(vec![a.at(0, 0)]);
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder_tridiag(&mut a, &mut d, &mut e);
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(d)
}

/// Eigenvalues (descending) and the matching orthonormal eigenvectors as
/// matrix columns.
pub fn sym_eigen(m: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let (mut a, n) = checked_copy(m)?;
    if n == 1 {
        let mut v = Matrix::zeros(1, 1);
        v.set(0, 0, 1.0);
        return Ok((vec![a.at(0, 0)], v));
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder_tridiag_accumulate(&mut a, &mut d, &mut e);
    ql_implicit(&mut d, &mut e, Some(&mut a))?;

    // sort descending, permuting the vector columns along
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_col, a.at(r, old_col));
        }
    }
    Ok((values, vectors))
}

/// Reference solver: cyclic Jacobi rotations, values only. Converges when
/// the off-diagonal Frobenius mass drops below 1e-12 of the matrix norm,
/// capped at 100 sweeps.
pub fn jacobi_eigenvalues(m: &Matrix) -> Result<Vec<f64>> {
    let (mut a, n) = checked_copy(m)?;
    if n == 1 {
        return Ok(vec![a.at(0, 0)]);
    }
    let fro = a.frobenius_norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.at(p, q) * a.at(p, q);
            }
        }
        if (2.0 * off).sqrt() <= 1e-12 * fro {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a.at(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.at(k, p);
                    let akq = a.at(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.at(p, k);
                    let aqk = a.at(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a.at(i, i)).collect();
    d.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(d)
}

fn checked_copy(m: &Matrix) -> Result<(Matrix, usize)> {
    if !m.is_square() {
        return Err(Error::InvalidMatrix(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let asym = m.relative_asymmetry();
    if asym > SYMMETRY_TOLERANCE {
        return Err(Error::InvalidMatrix(format!(
            "matrix is asymmetric beyond tolerance: relative asymmetry {asym:.3e}"
        )));
    }
    Ok((m.clone(), m.rows()))
}

/// Householder reduction to tridiagonal form, values-only variant.
/// On exit `d` holds the diagonal and `e[1..]` the subdiagonal.
fn householder_tridiag(a: &mut Matrix, d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for i in (1..n).rev() {
        let l = i;
        let mut h = 0.0;
        let mut scale = 0.0;
        for k in 0..l {
            scale += a.at(i, k).abs();
        }
        if scale == 0.0 {
            e[i] = a.at(i, l - 1);
            d[i] = 0.0;
            continue;
        }
        for k in 0..l {
            let v = a.at(i, k) / scale;
            a.set(i, k, v);
            h += v * v;
        }
        let f = a.at(i, l - 1);
        let g = if f > 0.0 { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        a.set(i, l - 1, f - g);
        let mut ff = 0.0;
        for j in 0..l {
            // form element of A*u in e[j]
            let mut g = 0.0;
            for k in 0..=j {
                g += a.at(j, k) * a.at(i, k);
            }
            for k in (j + 1)..l {
                g += a.at(k, j) * a.at(i, k);
            }
            e[j] = g / h;
            ff += e[j] * a.at(i, j);
        }
        let hh = ff / (2.0 * h);
        for j in 0..l {
            e[j] -= hh * a.at(i, j);
        }
        for j in 0..l {
            let fj = a.at(i, j);
            let gj = e[j];
            for k in 0..=j {
                let v = a.at(j, k) - (fj * e[k] + gj * a.at(i, k));
                a.set(j, k, v);
            }
        }
        d[i] = h;
    }
    // unused in the values-only variant beyond bookkeeping
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        d[i] = a.at(i, i);
    }
}

/// Householder reduction that also prepares `a` for eigenvector
/// accumulation inside the QL iteration (tred2).
fn householder_tridiag_accumulate(a: &mut Matrix, d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for j in 0..n {
        d[j] = a.at(n - 1, j);
    }
    for i in (1..n).rev() {
        let l = i;
        let mut h = 0.0;
        let mut scale = 0.0;
        for item in d.iter().take(l) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[l - 1];
            for j in 0..l {
                d[j] = a.at(l - 1, j);
                a.set(i, j, 0.0);
                a.set(j, i, 0.0);
            }
        } else {
            for item in d.iter_mut().take(l) {
                *item /= scale;
                h += *item * *item;
            }
            let f = d[l - 1];
            let g = if f > 0.0 { -h.sqrt() } else { h.sqrt() };
            e[i] = scale * g;
            h -= f * g;
            d[l - 1] = f - g;
            for item in e.iter_mut().take(l) {
                *item = 0.0;
            }
            for j in 0..l {
                let fj = d[j];
                a.set(j, i, fj);
                let mut gj = e[j] + a.at(j, j) * fj;
                for k in (j + 1)..l {
                    gj += a.at(k, j) * d[k];
                    e[k] += a.at(k, j) * fj;
                }
                e[j] = gj;
            }
            let mut f = 0.0;
            for j in 0..l {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..l {
                e[j] -= hh * d[j];
            }
            for j in 0..l {
                let fj = d[j];
                let gj = e[j];
                for k in j..l {
                    let v = a.at(k, j) - (fj * e[k] + gj * d[k]);
                    a.set(k, j, v);
                }
                d[j] = a.at(l - 1, j);
                a.set(i, j, 0.0);
            }
        }
        d[i] = h;
    }
    // accumulate the Householder transformations
    for i in 0..n - 1 {
        a.set(n - 1, i, a.at(i, i));
        a.set(i, i, 1.0);
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = a.at(k, i + 1) / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += a.at(k, i + 1) * a.at(k, j);
                }
                for k in 0..=i {
                    let v = a.at(k, j) - g * d[k];
                    a.set(k, j, v);
                }
            }
        }
        for k in 0..=i {
            a.set(k, i + 1, 0.0);
        }
    }
    for j in 0..n {
        d[j] = a.at(n - 1, j);
        a.set(n - 1, j, 0.0);
    }
    a.set(n - 1, n - 1, 1.0);
    e[0] = 0.0;
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix (tql2).
/// When `vectors` is given, the rotations are accumulated into it.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut vectors: Option<&mut Matrix>) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0_f64;
    let mut tst1 = 0.0_f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::InvalidMatrix(
                        "QL iteration failed to converge".into(),
                    ));
                }
                // implicit shift
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(v) = vectors.as_deref_mut() {
                        for k in 0..n {
                            let hk = v.at(k, i + 1);
                            v.set(k, i + 1, s * v.at(k, i) + c * hk);
                            v.set(k, i, c * v.at(k, i) - s * hk);
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

//! CSV sample matrices: ASCII decimal, comma-separated, one observation
//! per row, no header. Written cells carry 17 significant digits so a
//! written matrix re-parses to identical values.

use crate::report::fmt_full;
use crate::spectrum::SampleMatrix;
use crate::{Error, Result};

/// Parse a CSV sample matrix. Rows must have equal column counts and all
/// cells must parse as finite reals.
pub fn parse_matrix(text: &str) -> Result<SampleMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for cell in line.split(',') {
            let cell = cell.trim();
            let v: f64 = cell.parse().map_err(|_| {
                Error::Parse(format!(
                    "line {}: {:?} is not a decimal number",
                    lineno + 1,
                    cell
                ))
            })?;
            if !v.is_finite() {
                return Err(Error::Parse(format!(
                    "line {}: non-finite value {}",
                    lineno + 1,
                    v
                )));
            }
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse(format!(
                    "line {}: {} columns, expected {}",
                    lineno + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix file".into()));
    }
    SampleMatrix::from_rows(&rows)
}

/// Render a sample matrix in the same CSV dialect.
pub fn matrix_to_csv(matrix: &SampleMatrix) -> String {
    let mut out = String::new();
    for i in 0..matrix.n_samples() {
        let row = matrix.row(i);
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&fmt_full(*v));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_simple_matrix() {
        let m = parse_matrix("1, 2.5, -3\n4e0, 0.5, 6\n").unwrap();
        assert_eq!(m.n_samples(), 2);
        assert_eq!(m.n_dim(), 3);
        assert_eq!(m.row(0), &[1.0, 2.5, -3.0]);
    }

    #[test]
    fn round_trip_preserves_values_exactly() {
        let rows = vec![
            vec![std::f64::consts::PI, -1.0 / 3.0, 1e-17],
            vec![2.0f64.sqrt(), 1e300, -0.0],
        ];
        let m = SampleMatrix::from_rows(&rows).unwrap();
        let text = matrix_to_csv(&m);
        let back = parse_matrix(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn single_row_is_insufficient() {
        assert!(matches!(
            parse_matrix("1,2,3\n"),
            Err(Error::InsufficientSamples(_))
        ));
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(parse_matrix("1,x\n2,3\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("1,2\n3\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("nan,1\n2,3\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix(""), Err(Error::Parse(_))));
    }
}

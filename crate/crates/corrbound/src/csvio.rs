//! Matrix file format: one row per line, comma-separated decimal floats,
//! optional whitespace, no header.

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;

/// Inputs may differ from their transpose by at most this much before they
/// are rejected as genuinely asymmetric rather than decimal-truncated.
const SYMMETRY_TOL: f64 = 1e-9;

/// Parse a square matrix. Near-symmetric input (within 1e-9) is symmetrized
/// exactly by averaging with its transpose; anything worse is an error.
pub fn parse_matrix_csv(text: &str) -> Result<SymMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split(',') {
            let t = field.trim();
            let value: f64 = t.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("not a number: {t:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("non-finite entry: {t:?}"),
                });
            }
            row.push(value);
        }
        rows.push(row);
    }

    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse {
            line: 0,
            message: "empty matrix".into(),
        });
    }
    for (idx, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected {n} columns, got {}", row.len()),
            });
        }
    }

    for (i, row) in rows.iter().enumerate() {
        for (j, value) in row.iter().enumerate().skip(i + 1) {
            let delta = (value - rows[j][i]).abs();
            if delta > SYMMETRY_TOL {
                return Err(Error::Asymmetric {
                    row: i,
                    col: j,
                    delta,
                });
            }
        }
    }
    SymMatrix::from_rows(&rows)
}

/// Write a matrix with 17 significant digits per entry, which round-trips
/// 64-bit floats exactly.
pub fn format_matrix_csv(m: &SymMatrix) -> String {
    let n = m.n();
    let mut out = String::new();
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format!("{:.16e}", m.get(i, j)));
        }
        out.push('\n');
    }
    out
}

//! Dense symmetric eigendecomposition, determinants, and variance primitives.
//!
//! Everything here targets small-to-moderate matrices (n up to a few hundred),
//! stored dense and row-major. Eigenvalues come from cyclic Jacobi rotations,
//! determinants from LU with partial pivoting.

use crate::error::{Error, Result};

/// Maximum number of Jacobi sweeps before giving up.
const MAX_SWEEPS: usize = 100;

/// Convergence threshold: off-diagonal Frobenius norm relative to the full norm.
const JACOBI_TOL: f64 = 1e-12;

/// Sort order of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortOrder {
    Ascending,
    Descending,
}

/// A dense n-by-n real symmetric matrix, row-major.
///
/// Construction symmetrizes the input by averaging with its transpose, so
/// `get(i, j) == get(j, i)` holds exactly afterwards. Averaging is exact for
/// inputs that are already symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    /// Build from a flat row-major slice of length n*n.
    pub fn from_flat(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionTooSmall { n });
        }
        if entries.len() != n * n {
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "expected {} entries for a {n}x{n} matrix, got {}",
                    n * n,
                    entries.len()
                ),
            });
        }
        let mut m = SymMatrix { n, entries };
        m.symmetrize();
        Ok(m)
    }

    /// Build from nested rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionTooSmall { n });
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("ragged rows: expected {n} columns, got {}", row.len()),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_flat(n, entries)
    }

    /// The n-by-n identity.
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        SymMatrix { n, entries }
    }

    fn symmetrize(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (self.entries[i * n + j] + self.entries[j * n + i]);
                self.entries[i * n + j] = avg;
                self.entries[j * n + i] = avg;
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at row i, column j.
    ///
    /// # Panics
    /// Panics if i or j is out of bounds.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "index out of bounds");
        self.entries[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set_pair(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.n + j] = value;
        self.entries[j * self.n + i] = value;
    }

    /// Flat row-major view of the entries.
    #[inline]
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entries as nested rows.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.entries[i * self.n + i]).sum()
    }

    /// Sum of squared entries (squared Frobenius norm).
    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum()
    }
}

/// Eigenvalues with an explicit sort order.
///
/// Classical majorization reads spectra in descending order, variance
/// majorization in ascending order; the tag keeps the two conventions from
/// being mixed up.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    order: SortOrder,
}

impl Spectrum {
    /// Sorts `values` according to `order`. The sort is stable, so ties keep
    /// their incoming order.
    pub fn new(mut values: Vec<f64>, order: SortOrder) -> Self {
        match order {
            SortOrder::Ascending => values.sort_by(f64::total_cmp),
            SortOrder::Descending => values.sort_by(|a, b| f64::total_cmp(b, a)),
        }
        Spectrum { values, order }
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn order(&self) -> SortOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same values re-tagged and re-sorted.
    pub fn with_order(&self, order: SortOrder) -> Spectrum {
        Spectrum::new(self.values.clone(), order)
    }

    /// Product of the eigenvalues.
    pub fn product(&self) -> f64 {
        self.values.iter().product()
    }
}

/// All eigenvalues of a symmetric matrix, via cyclic Jacobi rotations.
///
/// Converges when the off-diagonal Frobenius norm drops below
/// 1e-12 times the Frobenius norm of the input, or fails after 100 sweeps.
pub fn eigenvalues_symmetric(a: &SymMatrix, order: SortOrder) -> Result<Spectrum> {
    let (values, _) = jacobi(a, false)?;
    Ok(Spectrum::new(values, order))
}

/// Full eigendecomposition; the second element holds eigenvectors as columns
/// of a row-major n-by-n matrix. Used internally for PSD reprojection.
pub(crate) fn eigen_decomposition(a: &SymMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let (values, vectors) = jacobi(a, true)?;
    Ok((values, vectors.expect("vectors requested")))
}

fn jacobi(a: &SymMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let n = a.n();
    let mut m = a.entries().to_vec();
    let mut v = if want_vectors {
        Some(SymMatrix::identity(n).entries().to_vec())
    } else {
        None
    };

    if n == 1 {
        return Ok((vec![m[0]], v));
    }

    let threshold = JACOBI_TOL * a.frobenius_sq().sqrt();

    for _ in 0..MAX_SWEEPS {
        let mut off_sq = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off_sq += 2.0 * m[p * n + q] * m[p * n + q];
            }
        }
        if off_sq.sqrt() <= threshold {
            let values = (0..n).map(|i| m[i * n + i]).collect();
            return Ok((values, v));
        }

        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                // Smaller root of t^2 + 2*theta*t - 1 = 0 for stability.
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = m[i * n + p];
                    let aiq = m[i * n + q];
                    let new_ip = c * aip - s * aiq;
                    let new_iq = s * aip + c * aiq;
                    m[i * n + p] = new_ip;
                    m[p * n + i] = new_ip;
                    m[i * n + q] = new_iq;
                    m[q * n + i] = new_iq;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;

                if let Some(vec) = v.as_mut() {
                    for i in 0..n {
                        let vip = vec[i * n + p];
                        let viq = vec[i * n + q];
                        vec[i * n + p] = c * vip - s * viq;
                        vec[i * n + q] = s * vip + c * viq;
                    }
                }
            }
        }
    }

    Err(Error::NonConvergence { sweeps: MAX_SWEEPS })
}

/// Determinant via LU factorization with partial pivoting.
///
/// Singular matrices return 0.0; the sign is tracked through row swaps.
pub fn determinant(a: &SymMatrix) -> f64 {
    let n = a.n();
    let mut m = a.entries().to_vec();
    let mut sign = 1.0;

    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_abs = m[k * n + k].abs();
        for i in (k + 1)..n {
            let cand = m[i * n + k].abs();
            if cand > pivot_abs {
                pivot_abs = cand;
                pivot_row = i;
            }
        }
        if m[pivot_row * n + k] == 0.0 {
            return 0.0;
        }
        if pivot_row != k {
            for j in 0..n {
                m.swap(k * n + j, pivot_row * n + j);
            }
            sign = -sign;
        }
        let pivot = m[k * n + k];
        for i in (k + 1)..n {
            let factor = m[i * n + k] / pivot;
            for j in (k + 1)..n {
                m[i * n + j] -= factor * m[k * n + j];
            }
        }
    }

    let mut det = sign;
    for k in 0..n {
        det *= m[k * n + k];
    }
    det
}

/// Population variance: (1/k) * sum((x_i - mean)^2).
pub fn variance(x: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyVector);
    }
    let k = x.len() as f64;
    let mean = x.iter().sum::<f64>() / k;
    Ok(x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / k)
}

/// First k entries of x, order preserved; k must lie in 1..=len.
pub fn prefix(x: &[f64], k: usize) -> Result<Vec<f64>> {
    if k == 0 || k > x.len() {
        return Err(Error::OutOfRange { k, len: x.len() });
    }
    Ok(x[..k].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_1_matrix() -> SymMatrix {
        SymMatrix::from_rows(&[
            vec![1.0, 0.0, -0.5],
            vec![0.0, 1.0, 0.5],
            vec![-0.5, 0.5, 1.0],
        ])
        .unwrap()
    }

    #[test]
    fn eigenvalues_of_identity() {
        let eye = SymMatrix::identity(3);
        let s = eigenvalues_symmetric(&eye, SortOrder::Ascending).unwrap();
        assert_eq!(s.values(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn eigenvalues_2x2_equicorrelation() {
        let m = SymMatrix::from_rows(&[vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let s = eigenvalues_symmetric(&m, SortOrder::Ascending).unwrap();
        assert!((s.values()[0] - 0.5).abs() < 1e-12);
        assert!((s.values()[1] - 1.5).abs() < 1e-12);
    }

    // Characteristic polynomial of the fixture is (l - 1)(l^2 - 2l + 1/2),
    // so the spectrum is 1 -+ sqrt(1/2) and 1. The polynomial-root check below
    // is the independent oracle for the solver output.
    #[test]
    fn eigenvalues_match_characteristic_polynomial_roots() {
        let m = example_1_matrix();
        let s = eigenvalues_symmetric(&m, SortOrder::Ascending).unwrap();
        let expected = [1.0 - 0.5f64.sqrt(), 1.0, 1.0 + 0.5f64.sqrt()];
        for (got, want) in s.values().iter().zip(expected) {
            assert!((got - want).abs() < 1e-10, "got {got}, want {want}");
        }
        for &l in s.values() {
            let poly = l * l * l - 3.0 * l * l + 2.5 * l - 0.5;
            assert!(poly.abs() < 1e-10, "char poly residual {poly} at {l}");
        }
    }

    #[test]
    fn descending_order_flips_the_spectrum() {
        let m = example_1_matrix();
        let asc = eigenvalues_symmetric(&m, SortOrder::Ascending).unwrap();
        let desc = eigenvalues_symmetric(&m, SortOrder::Descending).unwrap();
        let mut flipped: Vec<f64> = desc.values().to_vec();
        flipped.reverse();
        assert_eq!(asc.values(), flipped.as_slice());
    }

    #[test]
    fn determinant_identity() {
        assert_eq!(determinant(&SymMatrix::identity(4)), 1.0);
    }

    #[test]
    fn determinant_fixtures() {
        assert!((determinant(&example_1_matrix()) - 0.5).abs() < 1e-12);
        let m = SymMatrix::from_rows(&[
            vec![1.0, 0.0, 0.8],
            vec![0.0, 1.0, -0.5],
            vec![0.8, -0.5, 1.0],
        ])
        .unwrap();
        assert!((determinant(&m) - 0.11).abs() < 1e-12);
    }

    #[test]
    fn determinant_of_singular_matrix_is_zero() {
        let m = SymMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(determinant(&m), 0.0);
    }

    #[test]
    fn variance_basics() {
        assert_eq!(variance(&[3.0, 3.0, 3.0]).unwrap(), 0.0);
        assert_eq!(variance(&[0.0, 1.0]).unwrap(), 0.25);
        // Spectrum of the 3x3 equicorrelation at 0.5: (n-1) r^2 = 0.5.
        assert!((variance(&[0.5, 0.5, 2.0]).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(variance(&[]), Err(Error::EmptyVector));
    }

    #[test]
    fn prefix_basics() {
        assert_eq!(prefix(&[1.0, 2.0, 3.0], 2).unwrap(), vec![1.0, 2.0]);
        assert_eq!(prefix(&[1.0, 2.0, 3.0], 3).unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(prefix(&[5.0], 1).unwrap(), vec![5.0]);
        assert!(prefix(&[1.0], 0).is_err());
        assert!(prefix(&[1.0], 2).is_err());
    }

    #[test]
    fn construction_symmetrizes() {
        let m = SymMatrix::from_rows(&[vec![1.0, 0.3], vec![0.1, 1.0]]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert!((m.get(0, 1) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix_converges_immediately() {
        let m = SymMatrix::from_flat(2, vec![0.0; 4]).unwrap();
        let s = eigenvalues_symmetric(&m, SortOrder::Ascending).unwrap();
        assert_eq!(s.values(), &[0.0, 0.0]);
    }

    #[test]
    fn eigen_decomposition_reconstructs() {
        let m = example_1_matrix();
        let n = m.n();
        let (vals, vecs) = eigen_decomposition(&m).unwrap();
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += vecs[i * n + k] * vals[k] * vecs[j * n + k];
                }
                assert!((acc - m.get(i, j)).abs() < 1e-12);
            }
        }
    }
}

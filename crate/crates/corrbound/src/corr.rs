//! Correlation-matrix domain model: validation, off-diagonal statistics, and
//! the equicorrelation comparison matrices with their closed-form spectra.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{self, SortOrder, Spectrum, SymMatrix};

/// Default PSD tolerance on the minimum eigenvalue: matrices read back from
/// text are positive semidefinite only to input precision.
pub fn default_psd_tolerance(n: usize) -> f64 {
    1e-10 * n as f64
}

/// A validated correlation matrix: unit diagonal, off-diagonal entries in
/// [-1, 1], positive semidefinite within tolerance, n >= 2.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    base: SymMatrix,
}

impl CorrelationMatrix {
    /// Validate with the default PSD tolerance.
    pub fn validate(a: SymMatrix) -> Result<Self> {
        let tol = default_psd_tolerance(a.n());
        Self::validate_with_tolerance(a, tol)
    }

    /// Validate, allowing the minimum eigenvalue to reach `-psd_tolerance`.
    ///
    /// Reports the first violated invariant: dimension, then unit diagonal,
    /// then off-diagonal range, then positive semidefiniteness.
    pub fn validate_with_tolerance(a: SymMatrix, psd_tolerance: f64) -> Result<Self> {
        let n = a.n();
        if n < 2 {
            return Err(Error::DimensionTooSmall { n });
        }
        for i in 0..n {
            let d = a.get(i, i);
            if d != 1.0 {
                return Err(Error::NotUnitDiagonal { index: i, value: d });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let v = a.get(i, j);
                // NaN counts as out of range.
                if v.is_nan() || v.abs() > 1.0 {
                    return Err(Error::OffDiagonalOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        let spectrum = linalg::eigenvalues_symmetric(&a, SortOrder::Ascending)?;
        let min_eigenvalue = spectrum.values()[0];
        if min_eigenvalue < -psd_tolerance {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(CorrelationMatrix { base: a })
    }

    #[inline]
    pub fn matrix(&self) -> &SymMatrix {
        &self.base
    }

    pub fn into_matrix(self) -> SymMatrix {
        self.base
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.base.n()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.base.get(i, j)
    }

    pub fn spectrum(&self, order: SortOrder) -> Result<Spectrum> {
        linalg::eigenvalues_symmetric(&self.base, order)
    }
}

/// Summary statistics of the off-diagonal entries.
///
/// `r1` is the plain mean, `r2` the quadratic mean of absolute values, and
/// `r_inf` the maximum absolute value, all over the n(n-1) ordered
/// off-diagonal positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffDiagStats {
    pub r1: f64,
    pub r2: f64,
    pub r_inf: f64,
    pub n: usize,
}

/// Compute r1, r2, and r_inf for a validated matrix.
pub fn off_diag_stats(r: &CorrelationMatrix) -> OffDiagStats {
    let n = r.n();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut max_abs = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = r.get(i, j);
            sum += v;
            sum_sq += v * v;
            max_abs = max_abs.max(v.abs());
        }
    }
    // Each unordered pair appears twice among the n(n-1) ordered positions,
    // so the doubling cancels in both means.
    let pairs = (n * (n - 1) / 2) as f64;
    OffDiagStats {
        r1: sum / pairs,
        r2: (sum_sq / pairs).sqrt(),
        r_inf: max_abs,
        n,
    }
}

/// Power-mean exponent: a finite p > 1, or infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Err unless the exponent is infinity or a finite p > 1.
    pub fn validated(self) -> Result<Self> {
        match self {
            Exponent::Infinity => Ok(self),
            Exponent::Finite(p) if p.is_finite() && p > 1.0 => Ok(self),
            Exponent::Finite(p) => Err(Error::InvalidExponent { p }),
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// True for exponents in the regime where the bound is guaranteed, p <= 2.
    pub fn is_guaranteed_regime(self) -> bool {
        matches!(self, Exponent::Finite(p) if p <= 2.0)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::Infinity);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| Error::InvalidExponent { p: f64::NAN })?;
        if p.is_infinite() && p > 0.0 {
            return Ok(Exponent::Infinity);
        }
        Exponent::Finite(p).validated()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// Power mean of the absolute off-diagonal entries with exponent p.
///
/// Finite p is evaluated in rescaled form m * mean((|r|/m)^p)^(1/p) with
/// m = r_inf, which keeps large exponents from overflowing. All-zero
/// off-diagonals give 0 for every p including infinity.
pub fn r_p(r: &CorrelationMatrix, p: Exponent) -> Result<f64> {
    p.validated()?;
    let stats = off_diag_stats(r);
    if stats.r_inf == 0.0 {
        return Ok(0.0);
    }
    match p {
        Exponent::Infinity => Ok(stats.r_inf),
        Exponent::Finite(p) => {
            let n = r.n();
            let m = stats.r_inf;
            let mut acc = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    acc += 2.0 * (r.get(i, j).abs() / m).powf(p);
                }
            }
            let mean = acc / (n * (n - 1)) as f64;
            Ok(m * mean.powf(1.0 / p))
        }
    }
}

/// Matrix with unit diagonal and constant off-diagonal t.
///
/// t may lie outside [-1/(n-1), 1]; the result is then a symmetric matrix
/// that is not a valid correlation matrix, which the bound comparisons use
/// deliberately.
pub fn equicorrelation(n: usize, t: f64) -> Result<SymMatrix> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n });
    }
    let mut entries = vec![t; n * n];
    for i in 0..n {
        entries[i * n + i] = 1.0;
    }
    SymMatrix::from_flat(n, entries)
}

/// Closed-form spectrum of the equicorrelation matrix: 1 - t with
/// multiplicity n-1 and 1 + (n-1)t once, sorted ascending.
pub fn equicorrelation_spectrum(n: usize, t: f64) -> Result<Spectrum> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n });
    }
    let mut values = vec![1.0 - t; n - 1];
    values.push(1.0 + (n - 1) as f64 * t);
    Ok(Spectrum::new(values, SortOrder::Ascending))
}

/// The bound function (1-t)^(n-1) * (1 + (n-1)t), equal to the determinant
/// of the n-by-n equicorrelation matrix at t.
pub fn f_bound(n: usize, t: f64) -> f64 {
    debug_assert!(n >= 2);
    (1.0 - t).powi(n as i32 - 1) * (1.0 + (n - 1) as f64 * t)
}

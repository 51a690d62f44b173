//! Verdict engines for classical majorization and variance majorization.
//!
//! Both checks sort their inputs internally (descending for classical,
//! ascending for variance), so callers may pass spectra in either convention.
//! A verdict carries per-step slacks and equality residuals so a near-miss is
//! distinguishable from a gross failure.

use crate::corr::{self, CorrelationMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, SortOrder};

/// Which relation a verdict describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajorizationKind {
    Classical,
    Variance,
}

/// Outcome of a majorization check.
///
/// `slacks` hold the per-k margin of each inequality (positive = satisfied);
/// `equality_residuals` hold the sum residual, plus the total-variance
/// residual for the variance kind. The verdict holds when every slack is at
/// least `-tolerance` and every residual is at most `tolerance` in magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationVerdict {
    pub holds: bool,
    pub kind: MajorizationKind,
    pub slacks: Vec<f64>,
    pub equality_residuals: Vec<f64>,
    pub tolerance: f64,
}

impl MajorizationVerdict {
    fn evaluate(kind: MajorizationKind, slacks: Vec<f64>, residuals: Vec<f64>, tol: f64) -> Self {
        let holds = slacks.iter().all(|s| *s >= -tol) && residuals.iter().all(|r| r.abs() <= tol);
        MajorizationVerdict {
            holds,
            kind,
            slacks,
            equality_residuals: residuals,
            tolerance: tol,
        }
    }

    /// Smallest inequality slack, if any inequalities were checked.
    pub fn min_slack(&self) -> Option<f64> {
        self.slacks.iter().copied().min_by(f64::total_cmp)
    }
}

/// Classical majorization: does x majorize y?
///
/// Checks partial-sum dominance of the descending-sorted vectors for
/// k = 1..n-1 and equality of the totals.
pub fn majorizes(x: &[f64], y: &[f64], tol: f64) -> Result<MajorizationVerdict> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::LengthTooSmall { len: 0 });
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(|a, b| f64::total_cmp(b, a));
    ys.sort_by(|a, b| f64::total_cmp(b, a));

    let n = xs.len();
    let mut slacks = Vec::with_capacity(n.saturating_sub(1));
    let mut px = 0.0;
    let mut py = 0.0;
    for k in 0..n - 1 {
        px += xs[k];
        py += ys[k];
        slacks.push(px - py);
    }
    let sum_residual = (px + xs[n - 1]) - (py + ys[n - 1]);
    Ok(MajorizationVerdict::evaluate(
        MajorizationKind::Classical,
        slacks,
        vec![sum_residual],
        tol,
    ))
}

/// Variance majorization: does x variance-majorize y?
///
/// Requires equal sums and equal total variance, plus prefix-variance
/// dominance Var(x[k]) >= Var(y[k]) for k = 2..n-1 over the ascending-sorted
/// vectors. For n = 2 there are no interior k, so the verdict reduces to the
/// two equality conditions.
pub fn variance_majorizes(x: &[f64], y: &[f64], tol: f64) -> Result<MajorizationVerdict> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::LengthTooSmall { len: x.len() });
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);

    let n = xs.len();
    let sum_residual = xs.iter().sum::<f64>() - ys.iter().sum::<f64>();
    let var_residual = linalg::variance(&xs)? - linalg::variance(&ys)?;

    let mut slacks = Vec::with_capacity(n.saturating_sub(2));
    for k in 2..n {
        let vx = linalg::variance(&xs[..k])?;
        let vy = linalg::variance(&ys[..k])?;
        slacks.push(vx - vy);
    }
    Ok(MajorizationVerdict::evaluate(
        MajorizationKind::Variance,
        slacks,
        vec![sum_residual, var_residual],
        tol,
    ))
}

/// Check the two-sided variance-majorization sandwich on a correlation
/// matrix: the negative equicorrelation spectrum variance-majorizes the
/// spectrum of R, which variance-majorizes the positive equicorrelation
/// spectrum, both at off-diagonal level r2.
///
/// Returns (left verdict, right verdict). The comparison spectra come from
/// the closed form; only the spectrum of R uses the eigensolver.
pub fn verify_theorem1(
    r: &CorrelationMatrix,
    tol: f64,
) -> Result<(MajorizationVerdict, MajorizationVerdict)> {
    let n = r.n();
    let stats = corr::off_diag_stats(r);
    let lam = r.spectrum(SortOrder::Ascending)?;
    let lam_low = corr::equicorrelation_spectrum(n, -stats.r2)?;
    let lam_high = corr::equicorrelation_spectrum(n, stats.r2)?;
    let left = variance_majorizes(lam_low.values(), lam.values(), tol)?;
    let right = variance_majorizes(lam.values(), lam_high.values(), tol)?;
    Ok((left, right))
}

//! Determinant bounds for correlation matrices.
//!
//! The comparison determinants all come from the closed form `f_bound`;
//! factorizing the comparison matrices is a test-time cross-check, never a
//! runtime dependency.

use crate::corr::{self, CorrelationMatrix, Exponent, OffDiagStats};
use crate::error::{Error, Result};
use crate::linalg;

/// Default tolerance for the inequality verdicts.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance under which two bounds count as equal.
const EQUALITY_TOL: f64 = 1e-12;

/// Determinants and bound comparisons for one input matrix.
///
/// `det_rtilde`, `det_rhat`, and `det_rbar` are the equicorrelation
/// determinants at t = r1, r2, and -r2 respectively.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub n: usize,
    pub det_r: f64,
    pub stats: OffDiagStats,
    pub det_rtilde: f64,
    pub det_rhat: f64,
    pub det_rbar: f64,
    /// det_rbar <= det_r <= det_rhat, within tolerance.
    pub sandwich_holds: bool,
    /// det_r <= det_rtilde, within tolerance.
    pub olkin_holds: bool,
    /// det_rhat <= det_rtilde: the r2 bound is at least as sharp.
    pub improves_olkin: bool,
    pub r1_nonnegative: bool,
}

/// Compute the full bounds report with the default tolerance.
pub fn bounds_report(r: &CorrelationMatrix) -> BoundsReport {
    bounds_report_with_tol(r, DEFAULT_TOL)
}

/// Compute the full bounds report; `tol` loosens the inequality verdicts.
pub fn bounds_report_with_tol(r: &CorrelationMatrix, tol: f64) -> BoundsReport {
    let n = r.n();
    let stats = corr::off_diag_stats(r);
    let det_r = linalg::determinant(r.matrix());
    let det_rtilde = corr::f_bound(n, stats.r1);
    let det_rhat = corr::f_bound(n, stats.r2);
    let det_rbar = corr::f_bound(n, -stats.r2);
    BoundsReport {
        n,
        det_r,
        stats,
        det_rtilde,
        det_rhat,
        det_rbar,
        sandwich_holds: det_rbar - tol <= det_r && det_r <= det_rhat + tol,
        olkin_holds: det_r <= det_rtilde + tol,
        improves_olkin: det_rhat <= det_rtilde + EQUALITY_TOL,
        r1_nonnegative: stats.r1 >= 0.0,
    }
}

/// Evaluation of the power-mean bound at one exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct PBoundResult {
    pub p: Exponent,
    pub r_p: f64,
    pub det_rp: f64,
    /// det_r <= det_rp + tol.
    pub bound_holds: bool,
    /// det_rp - det_r; negative means the bound is violated.
    pub margin: f64,
}

/// Evaluate the bound det R <= f(n, r_p).
///
/// For finite p <= 2 the bound is guaranteed, so a failed verdict there is
/// reported as an internal inconsistency rather than a result.
pub fn p_bound(r: &CorrelationMatrix, p: Exponent, tol: f64) -> Result<PBoundResult> {
    let rp = corr::r_p(r, p)?;
    let det_r = linalg::determinant(r.matrix());
    let det_rp = corr::f_bound(r.n(), rp);
    let margin = det_rp - det_r;
    let bound_holds = det_r <= det_rp + tol;
    if !bound_holds && p.is_guaranteed_regime() {
        return Err(Error::InternalInconsistency {
            detail: format!("guaranteed bound violated at p = {p}: margin {margin:e}"),
        });
    }
    Ok(PBoundResult {
        p,
        r_p: rp,
        det_rp,
        bound_holds,
        margin,
    })
}

/// How the r2 bound compares against the r1 bound for this matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonVerdict {
    ImprovesOlkin,
    WeakerThanOlkin,
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundComparison {
    pub verdict: ComparisonVerdict,
    pub det_rtilde: f64,
    pub det_rhat: f64,
    /// |det_rhat - det_rtilde|.
    pub margin: f64,
}

/// Compare f(n, r2) against f(n, r1); Equal when they differ by at most 1e-12.
pub fn bound_comparison(r: &CorrelationMatrix) -> BoundComparison {
    let stats = corr::off_diag_stats(r);
    let det_rtilde = corr::f_bound(r.n(), stats.r1);
    let det_rhat = corr::f_bound(r.n(), stats.r2);
    let margin = (det_rhat - det_rtilde).abs();
    let verdict = if margin <= EQUALITY_TOL {
        ComparisonVerdict::Equal
    } else if det_rhat < det_rtilde {
        ComparisonVerdict::ImprovesOlkin
    } else {
        ComparisonVerdict::WeakerThanOlkin
    };
    BoundComparison {
        verdict,
        det_rtilde,
        det_rhat,
        margin,
    }
}

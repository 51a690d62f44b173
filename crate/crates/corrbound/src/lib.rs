//! Determinant bounds for correlation matrices.
//!
//! For an n-by-n correlation matrix R, let r1 be the mean off-diagonal entry,
//! r2 the quadratic mean of the absolute off-diagonal entries, and r_p the
//! general power mean. The determinant of R is bounded by the determinants of
//! the equicorrelation matrices at those levels, via the bound function
//! f(t) = (1-t)^(n-1) (1 + (n-1)t):
//!
//! * classical bound: det R <= f(r1);
//! * two-sided sandwich: f(-r2) <= det R <= f(r2), which for r1 >= 0 is at
//!   least as sharp as the classical bound;
//! * power-mean family: det R <= f(r_p) is guaranteed for p in (1, 2] and
//!   fails for p = infinity, where the toolkit searches for and reproduces
//!   counterexamples.
//!
//! The sandwich follows from a variance-majorization relation between the
//! spectra, which [`majorization::verify_theorem1`] checks numerically on any
//! input. The crate ships a CLI (`corrbound`) for analysis, sampling sweeps,
//! and counterexample searches over CSV matrices.

pub mod bounds;
pub mod corr;
pub mod csvio;
mod error;
pub mod explore;
pub mod fixtures;
pub mod linalg;
pub mod majorization;
pub mod report;

pub use error::{Error, Result};

pub use bounds::{bounds_report, p_bound, BoundsReport, PBoundResult};
pub use corr::{off_diag_stats, r_p, CorrelationMatrix, Exponent, OffDiagStats};
pub use explore::{
    random_correlation, search_improvement_with_negative_r1, search_p_counterexample, SearchConfig,
    SearchResult,
};
pub use linalg::{determinant, eigenvalues_symmetric, SortOrder, Spectrum, SymMatrix};
pub use majorization::{majorizes, variance_majorizes, verify_theorem1, MajorizationVerdict};
pub use report::{analyze, Report};

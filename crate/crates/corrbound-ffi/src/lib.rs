//! C ABI for the corrbound toolkit.
//!
//! Matrices are opaque handles created by `cb_matrix_new` or
//! `cb_matrix_random` and released with `cb_matrix_free`. Every function
//! returns a `CbStatus`; results are written through out-pointers. Strings
//! returned through out-pointers are NUL-terminated and owned by the caller,
//! who must release them with `cb_string_free`.
//!
//! The generated header lives at `include/corrbound.h`.

use std::ffi::{c_char, CString};

use corrbound::bounds;
use corrbound::corr::{CorrelationMatrix, Exponent};
use corrbound::explore::{self, SearchConfig};
use corrbound::linalg::SymMatrix;
use corrbound::{report, Error};

/// Result code of every API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CbStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// Input could not be parsed into a square symmetric matrix.
    ParseError = 2,
    /// A diagonal entry is not exactly 1.
    NotUnitDiagonal = 3,
    /// An off-diagonal entry lies outside [-1, 1].
    OffDiagonalOutOfRange = 4,
    /// The matrix is not positive semidefinite within tolerance.
    NotPositiveSemidefinite = 5,
    /// The dimension is too small for the operation.
    DimensionTooSmall = 6,
    /// The eigensolver did not converge.
    NonConvergence = 7,
    /// Power-mean exponent must be > 1 (or infinity).
    InvalidExponent = 8,
    /// Invalid search configuration.
    InvalidConfig = 9,
    /// Unexpected internal failure.
    InternalError = 10,
}

fn status_for(err: &Error) -> CbStatus {
    match err {
        Error::Parse { .. } | Error::Asymmetric { .. } => CbStatus::ParseError,
        Error::NotUnitDiagonal { .. } => CbStatus::NotUnitDiagonal,
        Error::OffDiagonalOutOfRange { .. } => CbStatus::OffDiagonalOutOfRange,
        Error::NotPositiveSemidefinite { .. } => CbStatus::NotPositiveSemidefinite,
        Error::DimensionTooSmall { .. } => CbStatus::DimensionTooSmall,
        Error::NonConvergence { .. } => CbStatus::NonConvergence,
        Error::InvalidExponent { .. } => CbStatus::InvalidExponent,
        Error::InvalidConfig { .. } => CbStatus::InvalidConfig,
        _ => CbStatus::InternalError,
    }
}

/// Opaque handle to a validated correlation matrix.
pub struct CbMatrix {
    inner: CorrelationMatrix,
}

/// Determinant bounds for one matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CbBounds {
    pub n: usize,
    pub r1: f64,
    pub r2: f64,
    pub r_inf: f64,
    pub det_r: f64,
    pub det_rtilde: f64,
    pub det_rhat: f64,
    pub det_rbar: f64,
    pub olkin_holds: bool,
    pub sandwich_holds: bool,
    pub improves_olkin: bool,
    pub theorem1_left_holds: bool,
    pub theorem1_right_holds: bool,
}

/// Power-mean bound evaluation at one exponent.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CbPBound {
    pub p: f64,
    pub r_p: f64,
    pub det_rp: f64,
    /// det_rp - det_r; negative means the bound is violated.
    pub margin: f64,
    pub holds: bool,
}

/// Search parameters; `p` is read only by the p-counterexample task and may
/// be INFINITY.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CbSearchParams {
    pub n: usize,
    pub p: f64,
    pub budget: u64,
    pub seed: u64,
    pub perturb_scale: f64,
    pub restarts: u32,
}

/// Search outcome; the best matrix is returned separately as a handle.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CbSearchSummary {
    pub objective: f64,
    pub iterations_used: u64,
    pub seed: u64,
    pub found: bool,
}

fn exponent_from(p: f64) -> Result<Exponent, Error> {
    if p.is_infinite() && p > 0.0 {
        Ok(Exponent::Infinity)
    } else {
        Exponent::Finite(p).validated()
    }
}

/// Build a matrix handle from a row-major n*n array.
///
/// The input must be square and symmetric to 1e-9 (it is symmetrized
/// exactly), with unit diagonal and off-diagonal entries in [-1, 1], and be
/// positive semidefinite within the default tolerance.
///
/// # Safety
/// `entries` must point to n*n readable doubles; `out` must be a valid
/// pointer. On Ok the caller owns the handle and must free it with
/// `cb_matrix_free`.
#[no_mangle]
pub unsafe extern "C" fn cb_matrix_new(
    n: usize,
    entries: *const f64,
    out: *mut *mut CbMatrix,
) -> CbStatus {
    if entries.is_null() || out.is_null() {
        return CbStatus::NullPointer;
    }
    if n == 0 {
        return CbStatus::DimensionTooSmall;
    }
    let data = std::slice::from_raw_parts(entries, n * n);
    if data.iter().any(|v| !v.is_finite()) {
        return CbStatus::ParseError;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (data[i * n + j] - data[j * n + i]).abs() > 1e-9 {
                return CbStatus::ParseError;
            }
        }
    }
    let rows: Vec<Vec<f64>> = data.chunks(n).map(|chunk| chunk.to_vec()).collect();
    let sym = match SymMatrix::from_rows(&rows) {
        Ok(m) => m,
        Err(e) => return status_for(&e),
    };
    match CorrelationMatrix::validate(sym) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(CbMatrix { inner }));
            CbStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// Deterministic random correlation matrix for (n, seed).
///
/// # Safety
/// `out` must be a valid pointer; the returned handle must be freed with
/// `cb_matrix_free`.
#[no_mangle]
pub unsafe extern "C" fn cb_matrix_random(
    n: usize,
    seed: u64,
    out: *mut *mut CbMatrix,
) -> CbStatus {
    if out.is_null() {
        return CbStatus::NullPointer;
    }
    match explore::random_correlation(n, seed) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(CbMatrix { inner }));
            CbStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// Release a matrix handle. NULL is ignored.
///
/// # Safety
/// `m` must be a handle obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cb_matrix_free(m: *mut CbMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of the matrix; 0 for NULL.
///
/// # Safety
/// `m` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cb_matrix_dim(m: *const CbMatrix) -> usize {
    if m.is_null() {
        return 0;
    }
    (*m).inner.n()
}

/// Copy the entries out, row-major.
///
/// # Safety
/// `out` must point to n*n writable doubles.
#[no_mangle]
pub unsafe extern "C" fn cb_matrix_entries(m: *const CbMatrix, out: *mut f64) -> CbStatus {
    if m.is_null() || out.is_null() {
        return CbStatus::NullPointer;
    }
    let entries = (*m).inner.matrix().entries();
    std::ptr::copy_nonoverlapping(entries.as_ptr(), out, entries.len());
    CbStatus::Ok
}

/// Compute all determinant bounds and verdicts. `tol` <= 0 selects the
/// default 1e-9.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cb_bounds(m: *const CbMatrix, tol: f64, out: *mut CbBounds) -> CbStatus {
    if m.is_null() || out.is_null() {
        return CbStatus::NullPointer;
    }
    let r = &(*m).inner;
    let tol = if tol > 0.0 { tol } else { bounds::DEFAULT_TOL };
    let b = bounds::bounds_report_with_tol(r, tol);
    let (left, right) = match corrbound::verify_theorem1(r, tol) {
        Ok(v) => v,
        Err(e) => return status_for(&e),
    };
    *out = CbBounds {
        n: b.n,
        r1: b.stats.r1,
        r2: b.stats.r2,
        r_inf: b.stats.r_inf,
        det_r: b.det_r,
        det_rtilde: b.det_rtilde,
        det_rhat: b.det_rhat,
        det_rbar: b.det_rbar,
        olkin_holds: b.olkin_holds,
        sandwich_holds: b.sandwich_holds,
        improves_olkin: b.improves_olkin,
        theorem1_left_holds: left.holds,
        theorem1_right_holds: right.holds,
    };
    CbStatus::Ok
}

/// Evaluate the power-mean bound at exponent `p` (INFINITY allowed).
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cb_p_bound(
    m: *const CbMatrix,
    p: f64,
    tol: f64,
    out: *mut CbPBound,
) -> CbStatus {
    if m.is_null() || out.is_null() {
        return CbStatus::NullPointer;
    }
    let exponent = match exponent_from(p) {
        Ok(e) => e,
        Err(e) => return status_for(&e),
    };
    let tol = if tol > 0.0 { tol } else { bounds::DEFAULT_TOL };
    match bounds::p_bound(&(*m).inner, exponent, tol) {
        Ok(res) => {
            *out = CbPBound {
                p,
                r_p: res.r_p,
                det_rp: res.det_rp,
                margin: res.margin,
                holds: res.bound_holds,
            };
            CbStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// Full analysis as a JSON document (same schema as `corrbound analyze
/// --json`).
///
/// # Safety
/// `m` must be a live handle; `out` receives a heap string to release with
/// `cb_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cb_analyze_json(
    m: *const CbMatrix,
    tol: f64,
    out: *mut *mut c_char,
) -> CbStatus {
    if m.is_null() || out.is_null() {
        return CbStatus::NullPointer;
    }
    let tol = if tol > 0.0 { tol } else { bounds::DEFAULT_TOL };
    match report::analyze(&(*m).inner, tol) {
        Ok(rep) => {
            let json = rep.to_json();
            let c = CString::new(json).expect("JSON has no interior NUL");
            *out = c.into_raw();
            CbStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn run_search(
    params: CbSearchParams,
    out_summary: *mut CbSearchSummary,
    out_matrix: *mut *mut CbMatrix,
    task: fn(&SearchConfig) -> Result<explore::SearchResult, Error>,
    exponent: Exponent,
) -> CbStatus {
    if out_summary.is_null() || out_matrix.is_null() {
        return CbStatus::NullPointer;
    }
    let mut cfg = SearchConfig::new(params.n, exponent);
    cfg.budget = params.budget;
    cfg.seed = params.seed;
    cfg.perturb_scale = params.perturb_scale;
    cfg.restarts = params.restarts;
    match task(&cfg) {
        Ok(res) => {
            *out_summary = CbSearchSummary {
                objective: res.objective,
                iterations_used: res.iterations_used,
                seed: res.seed,
                found: res.found,
            };
            *out_matrix = Box::into_raw(Box::new(CbMatrix {
                inner: res.best_matrix,
            }));
            CbStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// Hill-climb for det R > f(n, r_p) at the exponent in `params.p`.
///
/// # Safety
/// Both out-pointers must be valid; the matrix handle must be freed with
/// `cb_matrix_free`.
#[no_mangle]
pub unsafe extern "C" fn cb_search_p_counterexample(
    params: CbSearchParams,
    out_summary: *mut CbSearchSummary,
    out_matrix: *mut *mut CbMatrix,
) -> CbStatus {
    let exponent = match exponent_from(params.p) {
        Ok(e) => e,
        Err(e) => return status_for(&e),
    };
    run_search(
        params,
        out_summary,
        out_matrix,
        explore::search_p_counterexample,
        exponent,
    )
}

/// Hill-climb for r1 < 0 with the r2 bound sharper than the r1 bound;
/// `params.p` is ignored.
///
/// # Safety
/// Both out-pointers must be valid; the matrix handle must be freed with
/// `cb_matrix_free`.
#[no_mangle]
pub unsafe extern "C" fn cb_search_negative_r1(
    params: CbSearchParams,
    out_summary: *mut CbSearchSummary,
    out_matrix: *mut *mut CbMatrix,
) -> CbStatus {
    run_search(
        params,
        out_summary,
        out_matrix,
        explore::search_improvement_with_negative_r1,
        Exponent::Finite(2.0),
    )
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn cb_status_message(status: CbStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        CbStatus::Ok => b"ok\0",
        CbStatus::NullPointer => b"null pointer argument\0",
        CbStatus::ParseError => b"input is not a square symmetric matrix\0",
        CbStatus::NotUnitDiagonal => b"diagonal entries must all be exactly 1\0",
        CbStatus::OffDiagonalOutOfRange => b"off-diagonal entries must lie in [-1, 1]\0",
        CbStatus::NotPositiveSemidefinite => b"matrix is not positive semidefinite\0",
        CbStatus::DimensionTooSmall => b"matrix dimension too small\0",
        CbStatus::NonConvergence => b"eigensolver did not converge\0",
        CbStatus::InvalidExponent => b"exponent must be > 1 or infinity\0",
        CbStatus::InvalidConfig => b"invalid search configuration\0",
        CbStatus::InternalError => b"internal error\0",
    };
    text.as_ptr() as *const c_char
}

/// Version of the underlying library, as a static string.
#[no_mangle]
pub extern "C" fn cb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

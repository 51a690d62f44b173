//! Drives the C ABI the way a foreign caller would: handles, out-pointers,
//! and status codes.

use std::ffi::CStr;
use std::ptr;

use corrbound_ffi::*;

const FIXTURE_1: [f64; 9] = [1.0, 0.0, -0.5, 0.0, 1.0, 0.5, -0.5, 0.5, 1.0];
const FIXTURE_3: [f64; 9] = [1.0, 0.0, 0.8, 0.0, 1.0, -0.5, 0.8, -0.5, 1.0];

fn new_matrix(n: usize, entries: &[f64]) -> *mut CbMatrix {
    let mut handle: *mut CbMatrix = ptr::null_mut();
    let status = unsafe { cb_matrix_new(n, entries.as_ptr(), &mut handle) };
    assert_eq!(status, CbStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn matrix_round_trip() {
    let m = new_matrix(3, &FIXTURE_1);
    assert_eq!(unsafe { cb_matrix_dim(m) }, 3);
    let mut back = [0.0f64; 9];
    assert_eq!(
        unsafe { cb_matrix_entries(m, back.as_mut_ptr()) },
        CbStatus::Ok
    );
    assert_eq!(back, FIXTURE_1);
    unsafe { cb_matrix_free(m) };
}

#[test]
fn bounds_match_the_library() {
    let m = new_matrix(3, &FIXTURE_1);
    let mut b = std::mem::MaybeUninit::<CbBounds>::uninit();
    let status = unsafe { cb_bounds(m, 0.0, b.as_mut_ptr()) };
    assert_eq!(status, CbStatus::Ok);
    let b = unsafe { b.assume_init() };
    assert_eq!(b.n, 3);
    assert!((b.det_r - 0.5).abs() < 1e-12);
    assert!((b.det_rtilde - 1.0).abs() < 1e-12);
    assert!((b.det_rhat - 0.6361).abs() < 1e-3);
    assert!(b.olkin_holds && b.sandwich_holds && b.improves_olkin);
    assert!(b.theorem1_left_holds && b.theorem1_right_holds);
    unsafe { cb_matrix_free(m) };
}

#[test]
fn p_bound_detects_the_limit_violation() {
    let m = new_matrix(3, &FIXTURE_3);
    let mut r = std::mem::MaybeUninit::<CbPBound>::uninit();
    let status = unsafe { cb_p_bound(m, f64::INFINITY, 0.0, r.as_mut_ptr()) };
    assert_eq!(status, CbStatus::Ok);
    let r = unsafe { r.assume_init() };
    assert!(!r.holds);
    assert!((r.det_rp - 0.104).abs() < 1e-6);
    assert!((r.margin + 0.006).abs() < 1e-6);
    unsafe { cb_matrix_free(m) };
}

#[test]
fn p_bound_rejects_bad_exponents() {
    let m = new_matrix(3, &FIXTURE_1);
    let mut r = std::mem::MaybeUninit::<CbPBound>::uninit();
    assert_eq!(
        unsafe { cb_p_bound(m, 1.0, 0.0, r.as_mut_ptr()) },
        CbStatus::InvalidExponent
    );
    assert_eq!(
        unsafe { cb_p_bound(m, f64::NAN, 0.0, r.as_mut_ptr()) },
        CbStatus::InvalidExponent
    );
    unsafe { cb_matrix_free(m) };
}

#[test]
fn analyze_json_has_the_schema() {
    let m = new_matrix(3, &FIXTURE_1);
    let mut s: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(unsafe { cb_analyze_json(m, 0.0, &mut s) }, CbStatus::Ok);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    assert!(text.contains("\"det_R\""));
    assert!(text.contains("\"spectra\""));
    unsafe { cb_string_free(s) };
    unsafe { cb_matrix_free(m) };
}

#[test]
fn validation_statuses() {
    let mut handle: *mut CbMatrix = ptr::null_mut();

    let bad_diag = [1.0, 0.9, 0.9, 2.0];
    assert_eq!(
        unsafe { cb_matrix_new(2, bad_diag.as_ptr(), &mut handle) },
        CbStatus::NotUnitDiagonal
    );

    let out_of_range = [1.0, 1.2, 1.2, 1.0];
    assert_eq!(
        unsafe { cb_matrix_new(2, out_of_range.as_ptr(), &mut handle) },
        CbStatus::OffDiagonalOutOfRange
    );

    let indefinite = [1.0, -0.9, -0.9, -0.9, 1.0, -0.9, -0.9, -0.9, 1.0];
    assert_eq!(
        unsafe { cb_matrix_new(3, indefinite.as_ptr(), &mut handle) },
        CbStatus::NotPositiveSemidefinite
    );

    let asymmetric = [1.0, 0.5, 0.3, 1.0];
    assert_eq!(
        unsafe { cb_matrix_new(2, asymmetric.as_ptr(), &mut handle) },
        CbStatus::ParseError
    );

    let tiny = [1.0];
    assert_eq!(
        unsafe { cb_matrix_new(1, tiny.as_ptr(), &mut handle) },
        CbStatus::DimensionTooSmall
    );

    assert_eq!(
        unsafe { cb_matrix_new(2, ptr::null(), &mut handle) },
        CbStatus::NullPointer
    );
    assert_eq!(
        unsafe { cb_matrix_entries(ptr::null(), ptr::null_mut()) },
        CbStatus::NullPointer
    );
    assert_eq!(unsafe { cb_matrix_dim(ptr::null()) }, 0);
}

#[test]
fn random_matrices_are_deterministic() {
    let mut a: *mut CbMatrix = ptr::null_mut();
    let mut b: *mut CbMatrix = ptr::null_mut();
    assert_eq!(unsafe { cb_matrix_random(4, 99, &mut a) }, CbStatus::Ok);
    assert_eq!(unsafe { cb_matrix_random(4, 99, &mut b) }, CbStatus::Ok);
    let mut ea = [0.0f64; 16];
    let mut eb = [0.0f64; 16];
    unsafe {
        cb_matrix_entries(a, ea.as_mut_ptr());
        cb_matrix_entries(b, eb.as_mut_ptr());
        cb_matrix_free(a);
        cb_matrix_free(b);
    }
    assert_eq!(ea, eb);
}

#[test]
fn search_through_the_c_surface() {
    let params = CbSearchParams {
        n: 3,
        p: f64::INFINITY,
        budget: 300,
        seed: 7,
        perturb_scale: 0.05,
        restarts: 3,
    };
    let mut summary = std::mem::MaybeUninit::<CbSearchSummary>::uninit();
    let mut best: *mut CbMatrix = ptr::null_mut();
    let status = unsafe { cb_search_p_counterexample(params, summary.as_mut_ptr(), &mut best) };
    assert_eq!(status, CbStatus::Ok);
    let summary = unsafe { summary.assume_init() };
    assert!(summary.found);
    assert!(summary.objective > 1e-9);

    // The returned handle is a usable, valid matrix.
    let mut b = std::mem::MaybeUninit::<CbBounds>::uninit();
    assert_eq!(
        unsafe { cb_bounds(best, 0.0, b.as_mut_ptr()) },
        CbStatus::Ok
    );
    unsafe { cb_matrix_free(best) };

    // Guaranteed regime through the same surface: nothing found.
    let params = CbSearchParams {
        p: 2.0,
        budget: 50,
        restarts: 2,
        ..params
    };
    let mut summary = std::mem::MaybeUninit::<CbSearchSummary>::uninit();
    let mut best: *mut CbMatrix = ptr::null_mut();
    assert_eq!(
        unsafe { cb_search_p_counterexample(params, summary.as_mut_ptr(), &mut best) },
        CbStatus::Ok
    );
    assert!(!unsafe { summary.assume_init() }.found);
    unsafe { cb_matrix_free(best) };
}

#[test]
fn negative_r1_search_through_the_c_surface() {
    let params = CbSearchParams {
        n: 3,
        p: 2.0,
        budget: 500,
        seed: 1,
        perturb_scale: 0.05,
        restarts: 5,
    };
    let mut summary = std::mem::MaybeUninit::<CbSearchSummary>::uninit();
    let mut best: *mut CbMatrix = ptr::null_mut();
    assert_eq!(
        unsafe { cb_search_negative_r1(params, summary.as_mut_ptr(), &mut best) },
        CbStatus::Ok
    );
    let summary = unsafe { summary.assume_init() };
    assert!(summary.found);

    let mut b = std::mem::MaybeUninit::<CbBounds>::uninit();
    assert_eq!(
        unsafe { cb_bounds(best, 0.0, b.as_mut_ptr()) },
        CbStatus::Ok
    );
    let b = unsafe { b.assume_init() };
    assert!(b.r1 < 0.0);
    assert!(b.det_rhat < b.det_rtilde);
    unsafe { cb_matrix_free(best) };
}

#[test]
fn invalid_search_config_is_reported() {
    let params = CbSearchParams {
        n: 3,
        p: f64::INFINITY,
        budget: 0,
        seed: 1,
        perturb_scale: 0.05,
        restarts: 1,
    };
    let mut summary = std::mem::MaybeUninit::<CbSearchSummary>::uninit();
    let mut best: *mut CbMatrix = ptr::null_mut();
    assert_eq!(
        unsafe { cb_search_p_counterexample(params, summary.as_mut_ptr(), &mut best) },
        CbStatus::InvalidConfig
    );
}

#[test]
fn version_and_header_exist() {
    let v = unsafe { CStr::from_ptr(cb_version()) }.to_str().unwrap();
    assert!(!v.is_empty());
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/corrbound.h");
    let text = std::fs::read_to_string(header).expect("generated header present");
    assert!(text.contains("cb_matrix_new"));
    assert!(text.contains("CbStatus"));
}

#ifndef CORRBOUND_H
#define CORRBOUND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every API call.
typedef enum {
  CbStatus_Ok = 0,
  // A required pointer argument was NULL.
  CbStatus_NullPointer = 1,
  // Input could not be parsed into a square symmetric matrix.
  CbStatus_ParseError = 2,
  // A diagonal entry is not exactly 1.
  CbStatus_NotUnitDiagonal = 3,
  // An off-diagonal entry lies outside [-1, 1].
  CbStatus_OffDiagonalOutOfRange = 4,
  // The matrix is not positive semidefinite within tolerance.
  CbStatus_NotPositiveSemidefinite = 5,
  // The dimension is too small for the operation.
  CbStatus_DimensionTooSmall = 6,
  // The eigensolver did not converge.
  CbStatus_NonConvergence = 7,
  // Power-mean exponent must be > 1 (or infinity).
  CbStatus_InvalidExponent = 8,
  // Invalid search configuration.
  CbStatus_InvalidConfig = 9,
  // Unexpected internal failure.
  CbStatus_InternalError = 10,
} CbStatus;

// Opaque handle to a validated correlation matrix.
typedef struct CbMatrix CbMatrix;

// Determinant bounds for one matrix.
typedef struct {
  uintptr_t n;
  double r1;
  double r2;
  double r_inf;
  double det_r;
  double det_rtilde;
  double det_rhat;
  double det_rbar;
  bool olkin_holds;
  bool sandwich_holds;
  bool improves_olkin;
  bool theorem1_left_holds;
  bool theorem1_right_holds;
} CbBounds;

// Power-mean bound evaluation at one exponent.
typedef struct {
  double p;
  double r_p;
  double det_rp;
  // det_rp - det_r; negative means the bound is violated.
  double margin;
  bool holds;
} CbPBound;

// Search parameters; `p` is read only by the p-counterexample task and may
// be INFINITY.
typedef struct {
  uintptr_t n;
  double p;
  uint64_t budget;
  uint64_t seed;
  double perturb_scale;
  uint32_t restarts;
} CbSearchParams;

// Search outcome; the best matrix is returned separately as a handle.
typedef struct {
  double objective;
  uint64_t iterations_used;
  uint64_t seed;
  bool found;
} CbSearchSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Build a matrix handle from a row-major n*n array.
//
// The input must be square and symmetric to 1e-9 (it is symmetrized
// exactly), with unit diagonal and off-diagonal entries in [-1, 1], and be
// positive semidefinite within the default tolerance.
//
// # Safety
// `entries` must point to n*n readable doubles; `out` must be a valid
// pointer. On Ok the caller owns the handle and must free it with
// `cb_matrix_free`.
CbStatus cb_matrix_new(uintptr_t n, const double *entries, CbMatrix **out);

// Deterministic random correlation matrix for (n, seed).
//
// # Safety
// `out` must be a valid pointer; the returned handle must be freed with
// `cb_matrix_free`.
CbStatus cb_matrix_random(uintptr_t n, uint64_t seed, CbMatrix **out);

// Release a matrix handle. NULL is ignored.
//
// # Safety
// `m` must be a handle obtained from this library, not yet freed.
void cb_matrix_free(CbMatrix *m);

// Dimension of the matrix; 0 for NULL.
//
// # Safety
// `m` must be a live handle or NULL.
uintptr_t cb_matrix_dim(const CbMatrix *m);

// Copy the entries out, row-major.
//
// # Safety
// `out` must point to n*n writable doubles.
CbStatus cb_matrix_entries(const CbMatrix *m, double *out);

// Compute all determinant bounds and verdicts. `tol` <= 0 selects the
// default 1e-9.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
CbStatus cb_bounds(const CbMatrix *m, double tol, CbBounds *out);

// Evaluate the power-mean bound at exponent `p` (INFINITY allowed).
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
CbStatus cb_p_bound(const CbMatrix *m, double p, double tol, CbPBound *out);

// Full analysis as a JSON document (same schema as `corrbound analyze
// --json`).
//
// # Safety
// `m` must be a live handle; `out` receives a heap string to release with
// `cb_string_free`.
CbStatus cb_analyze_json(const CbMatrix *m, double tol, char **out);

// Release a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library, not yet freed.
void cb_string_free(char *s);

// Hill-climb for det R > f(n, r_p) at the exponent in `params.p`.
//
// # Safety
// Both out-pointers must be valid; the matrix handle must be freed with
// `cb_matrix_free`.
CbStatus cb_search_p_counterexample(CbSearchParams params,
                                    CbSearchSummary *out_summary,
                                    CbMatrix **out_matrix);

// Hill-climb for r1 < 0 with the r2 bound sharper than the r1 bound;
// `params.p` is ignored.
//
// # Safety
// Both out-pointers must be valid; the matrix handle must be freed with
// `cb_matrix_free`.
CbStatus cb_search_negative_r1(CbSearchParams params,
                               CbSearchSummary *out_summary,
                               CbMatrix **out_matrix);

// Static description of a status code.
const char *cb_status_message(CbStatus status);

// Version of the underlying library, as a static string.
const char *cb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CORRBOUND_H */

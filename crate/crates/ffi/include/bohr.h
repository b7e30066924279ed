#ifndef BOHR_H
#define BOHR_H

#include <stddef.h>

// Result code of every fallible call.
typedef enum BohrStatus {
  BOHR_STATUS_OK = 0,
  // Argument outside the domain of the operation.
  BOHR_STATUS_DOMAIN = 1,
  // Invalid parameter combination.
  BOHR_STATUS_PARAMETER = 2,
  // Radius at or beyond the convergence boundary.
  BOHR_STATUS_DIVERGENCE = 3,
  // Accuracy not reached within the term cap.
  BOHR_STATUS_TRUNCATED = 4,
  // Möbius map with a zero constant denominator.
  BOHR_STATUS_SINGULAR = 5,
  // No sign change of the gap function.
  BOHR_STATUS_NO_ROOT = 6,
  // A theorem hypothesis does not hold.
  BOHR_STATUS_HYPOTHESIS = 7,
  BOHR_STATUS_UNSUPPORTED = 8,
  BOHR_STATUS_UNKNOWN_CASE = 9,
  BOHR_STATUS_NULL_POINTER = 10,
  // A Rust panic was caught at the boundary.
  BOHR_STATUS_PANIC = 11,
} BohrStatus;

// Built-in weight families.
typedef enum BohrWeightKind {
  BOHR_WEIGHT_KIND_POWER = 0,
  BOHR_WEIGHT_KIND_EVEN = 1,
  BOHR_WEIGHT_KIND_ODD_WITH_UNIT_HEAD = 2,
  // Uses `start`.
  BOHR_WEIGHT_KIND_SHIFTED_LINEAR = 3,
  // Uses `alpha` and `start`.
  BOHR_WEIGHT_KIND_POWER_ALPHA = 4,
  // Uses `a`, `b`, `c`.
  BOHR_WEIGHT_KIND_HYPERGEOM_COEFF = 5,
} BohrWeightKind;

typedef enum BohrMethod {
  BOHR_METHOD_CLOSED_FORM = 0,
  BOHR_METHOD_BISECTION = 1,
} BohrMethod;

typedef enum BohrCatalogCase {
  BOHR_CATALOG_CASE_THEOREM_B = 0,
  BOHR_CATALOG_CASE_APP1 = 1,
  BOHR_CATALOG_CASE_APP2 = 2,
  BOHR_CATALOG_CASE_APP3 = 3,
  BOHR_CATALOG_CASE_APP4 = 4,
  BOHR_CATALOG_CASE_APP5_ALPHA1 = 5,
  BOHR_CATALOG_CASE_APP5_ALPHA2_PRINTED = 6,
  BOHR_CATALOG_CASE_COR41 = 7,
  BOHR_CATALOG_CASE_COR42 = 8,
  BOHR_CATALOG_CASE_REMARK31 = 9,
  BOHR_CATALOG_CASE_QUASI_SUBORDINATION = 10,
} BohrCatalogCase;

// Opaque coefficient stream.
typedef struct BohrStream BohrStream;

// Opaque weight family.
typedef struct BohrWeightFamily BohrWeightFamily;

typedef struct BohrWeightSpec {
  enum BohrWeightKind kind;
  double alpha;
  size_t start;
  double a;
  double b;
  double c;
} BohrWeightSpec;

typedef struct BohrTailSum {
  double value;
  size_t truncation_order;
  double bound_on_remainder;
} BohrTailSum;

typedef struct BohrRadiusResult {
  double value;
  enum BohrMethod method;
  double residual;
  double bracket_lo;
  double bracket_hi;
  size_t iterations;
} BohrRadiusResult;

// Parameters for [`bohr_closed_form_radius`]; each case reads what it needs.
typedef struct BohrCatalogParams {
  double gamma;
  double p;
  double k;
  double big_k;
  double y;
} BohrCatalogParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *bohr_status_message(enum BohrStatus status);

// Message for the last failed call on this thread; empty after a success.
//
// The pointer stays valid until the next call into this library on the
// same thread.
const char *bohr_last_error_message(void);

// # Safety
// `spec` must point to a valid `BohrWeightSpec`; `out` must be writable.
enum BohrStatus bohr_weight_family_new(const struct BohrWeightSpec *spec,
                                       struct BohrWeightFamily **out);

// # Safety
// `family` must come from `bohr_weight_family_new` and not be freed twice.
void bohr_weight_family_free(struct BohrWeightFamily *family);

// `φ_n(r)`.
//
// # Safety
// `family` must be a live handle; `out` must be writable.
enum BohrStatus bohr_weight_at(const struct BohrWeightFamily *family,
                               size_t n,
                               double r,
                               double *out);

// `Φ_n(r)` to within `tol`.
//
// # Safety
// `family` must be a live handle; `out` must be writable.
enum BohrStatus bohr_tail_sum(const struct BohrWeightFamily *family,
                              size_t n,
                              double r,
                              double tol,
                              struct BohrTailSum *out);

// `scale Φ_1(r) - (1 + γ) φ_0(r)`.
//
// # Safety
// `family` must be a live handle; `out` must be writable.
enum BohrStatus bohr_condition_gap(const struct BohrWeightFamily *family,
                                   double p,
                                   double gamma,
                                   double scale,
                                   double r,
                                   double *out);

// Minimal root of `lhs_scale Φ_1(r) = rhs_scale φ_0(r)`.
//
// # Safety
// `family` must be a live handle; `out` must be writable.
enum BohrStatus bohr_solve_radius(const struct BohrWeightFamily *family,
                                  double lhs_scale,
                                  double rhs_scale,
                                  double tol,
                                  struct BohrRadiusResult *out);

// # Safety
// `family` must be a live handle; `out` must be writable.
enum BohrStatus bohr_analytic_radius(const struct BohrWeightFamily *family,
                                     double p,
                                     double gamma,
                                     double tol,
                                     struct BohrRadiusResult *out);

// # Safety
// `family` must be a live handle; `out` must be writable.
enum BohrStatus bohr_harmonic_radius(const struct BohrWeightFamily *family,
                                     double p,
                                     double gamma,
                                     double k,
                                     double tol,
                                     struct BohrRadiusResult *out);

// # Safety
// `family` must be a live handle; `out` must be writable.
enum BohrStatus bohr_subordination_radius(const struct BohrWeightFamily *family,
                                          double k,
                                          double tol,
                                          struct BohrRadiusResult *out);

// # Safety
// `out` must be writable.
enum BohrStatus bohr_hypergeom_radius(double a,
                                      double b,
                                      double c,
                                      double p,
                                      double gamma,
                                      double tol,
                                      struct BohrRadiusResult *out);

// # Safety
// `params` must point to valid parameters; `out` must be writable.
enum BohrStatus bohr_closed_form_radius(enum BohrCatalogCase case_id,
                                        const struct BohrCatalogParams *params,
                                        double *out);

// Rising factorial `(x)_n`.
double bohr_pochhammer(double x, size_t n);

// # Safety
// `out` must be writable.
enum BohrStatus bohr_gauss_2f1(double a, double b, double c, double z, double *out);

// # Safety
// `out` must be writable.
enum BohrStatus bohr_lerch_phi(double z, double s, double a, double *out);

// # Safety
// `out` must be writable.
enum BohrStatus bohr_polylog(double s, double z, double *out);

// Finite stream with moduli of `coefficients[0..len]`.
//
// # Safety
// `coefficients` must point to `len` readable doubles; `out` must be writable.
enum BohrStatus bohr_stream_from_coefficients(const double *coefficients,
                                              size_t len,
                                              struct BohrStream **out);

// Stream of the extremal Möbius map `h_a` on Ω_γ.
//
// # Safety
// `out` must be writable.
enum BohrStatus bohr_stream_mobius_extremal(double a, double gamma, struct BohrStream **out);

// # Safety
// `stream` must come from a `bohr_stream_*` constructor and not be freed twice.
void bohr_stream_free(struct BohrStream *stream);

// `|a_n|`.
//
// # Safety
// `stream` must be a live handle; `out` must be writable.
enum BohrStatus bohr_stream_coefficient(const struct BohrStream *stream, size_t n, double *out);

// `Σ |a_n| r^n` to within `tol`.
//
// # Safety
// `stream` must be a live handle; `out` must be writable.
enum BohrStatus bohr_majorant(const struct BohrStream *stream, double r, double tol, double *out);

// Refined functional with the constant weight `Λ ≡ lambda`.
//
// # Safety
// `stream` and `family` must be live handles; `out` must be writable.
enum BohrStatus bohr_refined_functional(const struct BohrStream *stream,
                                        const struct BohrWeightFamily *family,
                                        double p,
                                        double gamma,
                                        double lambda,
                                        double r,
                                        double tol,
                                        double *out);

// Writes `|a_0|, ..., |a_{len-1}|` of `h_a` into `out`.
//
// # Safety
// `out` must point to `len` writable doubles.
enum BohrStatus bohr_mobius_extremal_coefficients(double a, double gamma, double *out, size_t len);

// Writes `count` points of `∂Ω_γ` into `xs` and `ys`.
//
// # Safety
// `xs` and `ys` must each point to `count` writable doubles.
enum BohrStatus bohr_boundary_points(double gamma, size_t count, double *xs, double *ys);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOHR_H */

#ifndef BASEB_H
#define BASEB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every `baseb_*` call.
typedef enum BasebStatus {
  BASEB_STATUS_OK = 0,
  BASEB_STATUS_NULL_POINTER = 1,
  BASEB_STATUS_INVALID_BASE = 2,
  BASEB_STATUS_INVALID_ARGUMENT = 3,
  BASEB_STATUS_DOMAIN = 4,
  BASEB_STATUS_NUMERIC = 5,
  BASEB_STATUS_PRECONDITION = 6,
  BASEB_STATUS_INTERNAL = 7,
  BASEB_STATUS_PANIC = 8,
} BasebStatus;

// Arbitrary-precision natural number.
typedef struct BasebNat BasebNat;

// Outcome of an identity sweep.
typedef struct BasebReport BasebReport;

// Truncated power series with natural-number coefficients.
typedef struct BasebSeries BasebSeries;

// Message for the most recent failed call on this thread; empty after a
// successful call. Owned by the library and valid until the next call.
const char *baseb_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void baseb_string_free(char *s);

// Parses a decimal string into a new natural.
//
// # Safety
// `text` must be null or a NUL-terminated string; `out` must be null or
// writable.
enum BasebStatus baseb_nat_from_string(const char *text, struct BasebNat **out);

// New natural holding `value`.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_nat_from_u64(uint64_t value, struct BasebNat **out);

// Decimal rendering; release with `baseb_string_free`.
//
// # Safety
// `nat` must be null or a live handle; `out` must be null or writable.
enum BasebStatus baseb_nat_to_string(const struct BasebNat *nat, char **out);

// Fails with `Numeric` if the value does not fit in 64 bits.
//
// # Safety
// `nat` must be null or a live handle; `out` must be null or writable.
enum BasebStatus baseb_nat_to_u64(const struct BasebNat *nat, uint64_t *out);

// # Safety
// `nat` must be null or a handle from this library, not yet freed.
void baseb_nat_free(struct BasebNat *nat);

// `C(n, k)_b`.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_binom_b(uint64_t n, uint64_t k, uint64_t b, struct BasebNat **out);

// `(n!)_b`.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_factorial_b(uint64_t n, uint64_t b, struct BasebNat **out);

// `F^{(b)}_n` with `F_0 = F_1 = 1`.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_fib_b(uint64_t n, uint64_t b, struct BasebNat **out);

// `{n, k}_b`.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_stirling2_b(uint64_t n, uint64_t k, uint64_t b, struct BasebNat **out);

// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_digit_sum(uint64_t n, uint64_t b, uint64_t *out);

// Whether every base-b digit of `k` is at most the matching digit of `n`.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_dominates(uint64_t n, uint64_t k, uint64_t b, bool *out);

// Stern's diatomic sequence.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_stern(uint64_t n, uint64_t *out);

// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_fib_tilde2(uint64_t n, uint64_t *out);

// `Γ(a, z)` for integer `a ≥ 1` and `z ≥ 0`.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_upper_gamma_int(uint32_t a, double z, double *out);

// Depth-`depth` product form of the base-b exponential; `0 ≤ w < 1`.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_exp_b_product(double x, double w, uint64_t b, uint32_t depth, double *out);

// First `terms` terms of the base-b exponential series.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_exp_b_series_numeric(double x,
                                            double w,
                                            uint64_t b,
                                            uintptr_t terms,
                                            double *out);

// Generating series of `F^{(b)}` truncated to `order` terms.
//
// # Safety
// `out` must be null or writable.
enum BasebStatus baseb_fib_b_series(uint64_t b, uintptr_t order, struct BasebSeries **out);

// # Safety
// `series` must be null or a live handle; `out` must be null or writable.
enum BasebStatus baseb_series_len(const struct BasebSeries *series, uintptr_t *out);

// Copy of the coefficient of `z^index` as a new natural.
//
// # Safety
// `series` must be null or a live handle; `out` must be null or writable.
enum BasebStatus baseb_series_coeff(const struct BasebSeries *series,
                                    uintptr_t index,
                                    struct BasebNat **out);

// # Safety
// `series` must be null or a handle from this library, not yet freed.
void baseb_series_free(struct BasebSeries *series);

// Runs the named identity sweep. A sweep that finds counterexamples still
// returns `Ok`; inspect the report.
//
// # Safety
// `identity` must be null or a NUL-terminated string; `out` must be null
// or writable.
enum BasebStatus baseb_verify(const char *identity,
                              uint64_t b,
                              uint64_t n_max,
                              uintptr_t workers,
                              struct BasebReport **out);

// # Safety
// `report` must be null or a live handle; outputs must be null or writable.
enum BasebStatus baseb_report_counts(const struct BasebReport *report,
                                     uint64_t *total,
                                     uint64_t *failed,
                                     uint64_t *skipped);

// The `"P/T pass"` summary line; release with `baseb_string_free`.
//
// # Safety
// `report` must be null or a live handle; `out` must be null or writable.
enum BasebStatus baseb_report_summary(const struct BasebReport *report, char **out);

// The `index`-th counterexample, rendered with its parameters and both
// sides; release with `baseb_string_free`.
//
// # Safety
// `report` must be null or a live handle; `out` must be null or writable.
enum BasebStatus baseb_report_failure(const struct BasebReport *report,
                                      uintptr_t index,
                                      char **out);

// # Safety
// `report` must be null or a handle from this library, not yet freed.
void baseb_report_free(struct BasebReport *report);

#endif  /* BASEB_H */

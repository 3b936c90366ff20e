#ifndef NONALTER_NONALTER_H
#define NONALTER_NONALTER_H

/* C interface to the two-constraint quadratic solver. Every object is an
 * opaque handle released by its matching *_free function. Functions return
 * NA_OK on success; otherwise na_last_error() describes the failure on the
 * calling thread. Strings returned by report accessors live as long as the
 * report. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NA_API __declspec(dllexport)
#else
#define NA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum na_status {
  NA_OK = 0,
  NA_ERR_INVALID_ARGUMENT = 1,
  NA_ERR_PARSE = 2,
  NA_ERR_DIMENSION = 3,
  NA_ERR_ASYMMETRIC = 4,
  NA_ERR_NUMERICAL = 5,
  NA_ERR_UNSUPPORTED = 6,
  NA_ERR_INTERNAL = 7
} na_status;

typedef enum na_sign { NA_SIGN_STRICT = 0, NA_SIGN_WEAK = 1 } na_sign;

typedef struct na_problem na_problem;
typedef struct na_options na_options;
typedef struct na_report na_report;

NA_API const char* na_version(void);
NA_API const char* na_last_error(void);
NA_API const char* na_status_name(na_status s);

/* Problems. Matrices are row-major n x n; the functions are
 * x^T A x + 2 a^T x + a0. */
NA_API na_status na_problem_load(const char* path, na_problem** out);
NA_API na_status na_problem_parse(const char* json, na_problem** out);
NA_API na_status na_problem_create(int n, const double* f_A, const double* f_a, double f_a0, const double* g_A,
                                   const double* g_a, double g_a0, const double* h_A, const double* h_a, double h_a0,
                                   na_problem** out);
NA_API void na_problem_free(na_problem* p);
NA_API int na_problem_dim(const na_problem* p);
NA_API size_t na_problem_warning_count(const na_problem* p);
NA_API const char* na_problem_warning(const na_problem* p, size_t i);
/* Caller releases the string with na_string_free. */
NA_API na_status na_problem_to_json(const na_problem* p, char** out);
NA_API void na_string_free(char* s);

/* Options. Defaults: tol 1e-7, grid resolution 401, bounds [-10, 10],
 * eps 1e-6, seed 0, witness samples 100000, no trace. */
NA_API na_options* na_options_create(void);
NA_API void na_options_free(na_options* o);
NA_API na_status na_options_set_tol(na_options* o, double tol);
NA_API na_status na_options_set_grid_res(na_options* o, int res);
NA_API na_status na_options_set_bounds(na_options* o, double lo, double hi);
NA_API na_status na_options_set_eps(na_options* o, double eps);
NA_API na_status na_options_set_seed(na_options* o, uint64_t seed);
NA_API na_status na_options_set_samples(na_options* o, long long samples);
NA_API na_status na_options_set_trace(na_options* o, int on);

/* Commands. A NULL options pointer means defaults. */
NA_API na_status na_classify(const na_problem* p, const na_options* o, na_report** out);
NA_API na_status na_solve(const na_problem* p, const na_options* o, na_report** out);
NA_API na_status na_oracle(const na_problem* p, const na_options* o, na_report** out);
NA_API na_status na_reduce(const na_problem* p, const na_options* o, na_report** out);
NA_API na_status na_check(const na_problem* p, const na_options* o, int assumption, na_report** out);
NA_API na_status na_witness(const na_problem* p, const na_options* o, na_sign g_sign, na_sign h_sign,
                            na_report** out);

NA_API const char* na_report_json(const na_report* r);
NA_API const char* na_report_text(const na_report* r);
/* 0 success, 3 infeasible, 4 unbounded, 5 undetermined. */
NA_API int na_report_exit_code(const na_report* r);
/* Optimal value, oracle minimum or NaN when the command has none. */
NA_API double na_report_value(const na_report* r);
NA_API size_t na_report_warning_count(const na_report* r);
NA_API const char* na_report_warning(const na_report* r, size_t i);
NA_API void na_report_free(na_report* r);

#ifdef __cplusplus
}
#endif

#endif

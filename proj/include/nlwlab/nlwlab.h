/* nlwlab - numerical laboratory for radial semilinear wave equations:
 * fractional calculus on radial grids, Muckenhoupt weight estimation,
 * space-time inequality harnesses, and blow-up lifespan experiments.
 *
 * C interface over the C++ core. All functions return NLW_OK on success;
 * on failure they return an error code and nlw_last_error() carries a
 * thread-local message. Objects are opaque handles released with the
 * matching *_free function; strings returned through char** are released
 * with nlw_string_free.
 */
#ifndef NLWLAB_H
#define NLWLAB_H

#include <stddef.h>

#if defined(_WIN32)
#define NLWLAB_API __declspec(dllexport)
#else
#define NLWLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  NLW_OK = 0,
  NLW_ERR_INVALID = 1, /* violated precondition or malformed argument */
  NLW_ERR_RUNTIME = 2  /* computation or I/O failure */
} nlw_status;

NLWLAB_API const char* nlw_version(void);
NLWLAB_API const char* nlw_last_error(void);
NLWLAB_API void nlw_string_free(char* s);

/* ---------- radial fields ----------
 * Fields live on the staggered grid r_i = (i+1/2) R/N, i = 0..N-1, with
 * dimension tag n in {2, 3}. The binary layout of nlw_field_save is:
 * n, N as little-endian int64, R as little-endian IEEE double, then N
 * little-endian doubles. */
typedef struct nlw_field nlw_field;

NLWLAB_API nlw_status nlw_field_create(int n, int N, double R, const double* samples,
                                       nlw_field** out);
NLWLAB_API nlw_status nlw_field_gaussian(int n, int N, double R, double amp, double center,
                                         double width, nlw_field** out);
NLWLAB_API void nlw_field_free(nlw_field* f);
NLWLAB_API nlw_status nlw_field_info(const nlw_field* f, int* n, int* N, double* R);
NLWLAB_API nlw_status nlw_field_values(const nlw_field* f, double* out /* length N */);
NLWLAB_API nlw_status nlw_field_save(const nlw_field* f, const char* path);
NLWLAB_API nlw_status nlw_field_load(const char* path, nlw_field** out);
NLWLAB_API nlw_status nlw_field_save_csv(const nlw_field* f, const char* path);

/* ---------- spectral calculus ---------- */
NLWLAB_API nlw_status nlw_fractional_derivative(const nlw_field* f, double s, nlw_field** out);
NLWLAB_API nlw_status nlw_sobolev_norm(const nlw_field* f, double s, int homogeneous,
                                       double* out);
NLWLAB_API nlw_status nlw_besov_half_norm(const nlw_field* f, double* out);
NLWLAB_API nlw_status nlw_lp_block(const nlw_field* f, int j, nlw_field** out);

/* ---------- exponents and Muckenhoupt weights ----------
 * weight_json: {"kind": "constant"|"power"|"product"|"morawetz",
 *               "a": .., "b": .., "delta": .., "delta1": ..} */
NLWLAB_API nlw_status nlw_exponents(int n, double p, double s, char** json_out);
NLWLAB_API nlw_status nlw_weight_eval(const char* weight_json, int n, double r, double* out);
NLWLAB_API nlw_status nlw_weight_a1(const char* weight_json, int n, char** json_out);
NLWLAB_API nlw_status nlw_weight_ap(const char* weight_json, int n, double p, char** json_out);

/* ---------- wave solver ----------
 * Box u = a |u_t|^p + b |grad u|^p, data (u0, u1) on a shared grid.
 * options_json (may be NULL): {"record_stride": int, "blowup_threshold": f,
 * "source": {"amp","t0","sigma_t","r0","sigma_r"}} */
typedef struct nlw_trajectory nlw_trajectory;

NLWLAB_API nlw_status nlw_evolve(const nlw_field* u0, const nlw_field* u1, double a, double b,
                                 double p, double t_max, double cfl, const char* options_json,
                                 nlw_trajectory** out);
NLWLAB_API void nlw_trajectory_free(nlw_trajectory* t);
NLWLAB_API nlw_status nlw_trajectory_summary(const nlw_trajectory* t, char** json_out);
NLWLAB_API nlw_status nlw_trajectory_size(const nlw_trajectory* t, int* count);
/* which: 0 = u, 1 = u_t, 2 = recorded forcing (Box u) */
NLWLAB_API nlw_status nlw_trajectory_field(const nlw_trajectory* t, int index, int which,
                                           nlw_field** out);
NLWLAB_API nlw_status nlw_trajectory_save(const nlw_trajectory* t, const char* dir);

/* free-wave spectral propagator at time t */
NLWLAB_API nlw_status nlw_propagate(const nlw_field* u0, const nlw_field* u1, double t,
                                    nlw_field** out_u, nlw_field** out_ut);

/* ---------- full laboratory runs ----------
 * subcommand: exponents | weight-check | spectral-selftest | ineq-trace |
 * ineq-chain | ineq-kss | ineq-strichartz | solve | lifespan | scaling |
 * persist-2d | report. config_json may be NULL (defaults) and outdir may be
 * NULL (no file output); otherwise config-echo.json, report.json and any
 * summary.csv / *.svg are written under outdir. exit_code receives 0 when
 * the run passed (or is informational) and 1 when an experiment criterion
 * failed. */
NLWLAB_API nlw_status nlw_run(const char* subcommand, const char* config_json,
                              const char* outdir, char** summary_json_out, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* NLWLAB_H */

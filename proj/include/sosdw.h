/* C interface to the domain-wall partition-function engine.
 *
 * All functions return a status code; on failure, sosdw_last_error() gives a
 * thread-local human-readable message (valid until the next failing call on
 * the same thread). Strings returned through char** are heap-allocated and
 * must be released with sosdw_string_free().
 *
 * Spectral parameters are passed in the additive convention: the engine maps
 * a coordinate x to q^x = exp(2*pi*i*eta*x) internally.
 */

#ifndef SOSDW_H
#define SOSDW_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SOSDW_OK = 0,
    SOSDW_E_DOMAIN = 1,   /* parameter outside the defined domain */
    SOSDW_E_POLE = 2,     /* evaluation at a zero divisor; message names it */
    SOSDW_E_NUMERIC = 3,  /* overflow / non-finite / lost precision */
    SOSDW_E_RESOURCE = 4, /* cap exceeded */
    SOSDW_E_USAGE = 5,    /* malformed arguments or config */
    SOSDW_E_UNKNOWN = 6
} sosdw_status;

typedef struct sosdw_ctx sosdw_ctx;

const char* sosdw_version(void);
const char* sosdw_last_error(void);
void sosdw_string_free(char* s);

/* --- theta kernel -------------------------------------------------------- */

/* Context with nome p and crossing parameter eta (both complex, |p| < 0.9,
 * eta off the period lattice). */
sosdw_status sosdw_ctx_new(double p_re, double p_im, double eta_re, double eta_im,
                           sosdw_ctx** out);
void sosdw_ctx_free(sosdw_ctx* ctx);

sosdw_status sosdw_theta(const sosdw_ctx* ctx, double x_re, double x_im,
                         double* out_re, double* out_im);
sosdw_status sosdw_bracket(const sosdw_ctx* ctx, double x_re, double x_im,
                           double* out_re, double* out_im);

/* --- states --------------------------------------------------------------- */

/* Number of admissible height matrices (equals the alternating-sign-matrix
 * count); out_decimal receives the count in base 10. */
sosdw_status sosdw_state_count(int n, int state_cap, char** out_decimal);
sosdw_status sosdw_asm_count(int n, char** out_decimal);
sosdw_status sosdw_cspp_count(int n, char** out_decimal);

/* One JSON object per state (heights, matching alternating sign matrix,
 * statistics), newline separated. */
sosdw_status sosdw_states_jsonl(int n, int state_cap, char** out);

/* --- evaluation ----------------------------------------------------------- */

/* method: brute | weightfn | ik | factored | rootN | laurent | freefermion.
 * x/y are length-n arrays (additive convention); aux is N for rootN and the
 * truncation K for laurent (pass 0 for the default), ignored otherwise. */
sosdw_status sosdw_evaluate(const sosdw_ctx* ctx, const char* method, int n,
                            const double* x_re, const double* x_im,
                            const double* y_re, const double* y_im,
                            double lambda_re, double lambda_im, int aux,
                            int state_cap, int threads,
                            double* out_re, double* out_im);

/* --- json-config drivers --------------------------------------------------- */

/* config: {"suites":["all"], "n_max":3, "trials":20, "seed":42, "tol":1e-8,
 *          "nome":0.2, "eta_re":0.3, "eta_im":0.11, "state_cap":7,
 *          "threads":1, "timings":true}
 * report: "sosdw/1" document with one record per check. */
sosdw_status sosdw_verify(const char* config_json, char** report_json);

/* config: {"kind":"colours"|"identities", "n_min":1, "n_max":5,
 *          "format":"csv"|"json", "state_cap":7} */
sosdw_status sosdw_tables(const char* config_json, char** out);

/* config: {"n":6, "seed":42, "nome":0.2, "eta_re":0.3, "eta_im":0.11,
 *          "methods":["brute","factored"], "state_cap":7, "threads":1} */
sosdw_status sosdw_bench(const char* config_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* SOSDW_H */

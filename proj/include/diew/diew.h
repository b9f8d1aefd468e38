/*
 * diew — device-independent entanglement witness toolkit.
 *
 * C API over the simulation core: state-family constructors, the
 * entanglement-swapping network, witness maximization, violation
 * thresholds, and parameter-region scans.
 *
 * Conventions:
 *   - all functions returning diew_status report failure details through
 *     diew_last_error() (thread-local);
 *   - angles are radians; qubit 0 is the most significant bit of a
 *     basis-state index;
 *   - objects returned through diew_matrix** are owned by the caller and
 *     released with diew_matrix_free; strings returned through char**
 *     with diew_string_free.
 */

#ifndef DIEW_H
#define DIEW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DIEW_API __declspec(dllexport)
#else
#define DIEW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum diew_status {
    DIEW_OK = 0,
    DIEW_ERR_INVALID_ARGUMENT = 1,
    DIEW_ERR_ZERO_PROBABILITY = 2, /* post-selection pattern has no weight */
    DIEW_ERR_NON_MONOTONE = 3,     /* bisection pre-check failed */
    DIEW_ERR_NO_VIOLATION = 4,     /* no violation anywhere in the scanned range */
    DIEW_ERR_PARSE = 5,
    DIEW_ERR_IO = 6,
    DIEW_ERR_INTERNAL = 7
} diew_status;

DIEW_API const char *diew_status_name(diew_status status);

/* Detail message for the most recent failing call on this thread. */
DIEW_API const char *diew_last_error(void);

/* ---- states ---------------------------------------------------------- */

/* Dense complex operator over n qubits; opaque. */
typedef struct diew_matrix diew_matrix;

/*
 * name is one of rho1|rho2|rho3|rho4. rho1/rho3 use (p, theta), rho2 uses
 * p1, rho4 uses (p, theta, sign) with sign '+' or '-'. Unused parameters
 * are ignored. p, p1 in [0,1]; theta in [0, pi/4].
 */
DIEW_API diew_status diew_state_create(const char *name, double p, double p1, double theta,
                                       char sign, diew_matrix **out);

DIEW_API void diew_matrix_free(diew_matrix *m);
DIEW_API int diew_matrix_n_qubits(const diew_matrix *m);
DIEW_API size_t diew_matrix_dim(const diew_matrix *m);
DIEW_API diew_status diew_matrix_entry(const diew_matrix *m, size_t row, size_t col,
                                       double *re, double *im);

/* JSON object with fields n_qubits, re, im. */
DIEW_API diew_status diew_matrix_to_json(const diew_matrix *m, char **out_json);
DIEW_API diew_status diew_matrix_from_json(const char *json_text, diew_matrix **out);
DIEW_API void diew_string_free(char *s);

/* Final mixing weight 2 p cos^2(theta) / (1 + p cos(2 theta)). */
DIEW_API diew_status diew_p_final(double p, double theta, double *out);

/* ---- entanglement-swapping network ----------------------------------- */

/*
 * Summary of one post-selected Bell-measurement outcome. pattern and
 * correction are comma-separated label lists ("psi+,psi+,psi-",
 * "I,Z,XZ"). matched_sign is '+', '-' or 'n' (no closed-form match);
 * when probability is 0 the pattern had no weight, correction is empty
 * and matched_sign is 'n'.
 */
typedef struct diew_swap_summary {
    char pattern[24];
    double probability;
    char correction[16];
    char matched_sign;
    double match_distance;
} diew_swap_summary;

/*
 * Run the 9-qubit network on rho1(p,theta), rho2(p1), rho3(p,theta) and
 * post-select on `pattern`. corrected_out (nullable) receives the
 * phase-corrected 3-qubit output state.
 */
DIEW_API diew_status diew_swap(double p, double p1, double theta, const char *pattern,
                               diew_swap_summary *out, diew_matrix **corrected_out);

/* All 64 outcomes, sorted by probability (descending). */
DIEW_API diew_status diew_swap_all(double p, double p1, double theta,
                                   diew_swap_summary out[64]);

/* JSON report: single pattern (object) or all 64 (array) when pattern is
 * NULL. embed_state adds the corrected state matrix to single-pattern
 * reports. */
DIEW_API diew_status diew_swap_to_json(double p, double p1, double theta, const char *pattern,
                                       int embed_state, char **out_json);

/* Protocol success probability 1/2 p p1 (1 + p cos 2t) sin^2 t. */
DIEW_API diew_status diew_success_probability(double p, double p1, double theta, double *out);

/* ---- witnesses and optimization --------------------------------------- */

/* witness is one of mermin|uffink|bancal|liang|cavalcanti. */
DIEW_API diew_status diew_witness_bound(const char *witness, double *out_bound,
                                        int *out_violation_above);

/*
 * Maximize the witness over measurement angles (multi-start simplex
 * search; deterministic in seed). out_angles receives the optimal flat
 * angle vector (party-major, setting-minor, theta then phi) and must
 * hold at least 18 doubles; *inout_n_angles carries its capacity in and
 * the used length out. Pass restarts/max_iters/value_tol <= 0 for the
 * defaults (200 / 2000 / 1e-9). For cavalcanti the reported value is the
 * minimum and violation means value < 0.
 */
DIEW_API diew_status diew_maximize(const diew_matrix *rho, const char *witness, int restarts,
                                   int max_iters, double value_tol, uint64_t seed,
                                   double *out_value, double *out_angles, int *inout_n_angles,
                                   int *out_violated);

/* Closed-form Mermin maximum over angles for rho1(p, theta). */
DIEW_API diew_status diew_mermin_max_rho1_analytic(double p, double theta, double *out);

/* Printed closed-form violation threshold; family is rho1..rho4. */
DIEW_API diew_status diew_table1_threshold(const char *witness, const char *family, double theta,
                                           double *out);

/*
 * Numeric threshold by bisection over p (p1 for rho2) at fixed theta,
 * to bracket width <= tol.
 */
DIEW_API diew_status diew_bisect_threshold(const char *witness, const char *family, double theta,
                                           double tol, int restarts, int max_iters, uint64_t seed,
                                           double *out_threshold, double *out_bracket_width);

/* ---- parameter scans --------------------------------------------------- */

typedef struct diew_region_point {
    double theta, p, p1;
    int v_rho1, v_rho2, v_rho3, v_rho4;
    int enhanced;
    int has_values; /* numeric mode: val_* carry per-state witness maxima */
    double val_rho1, val_rho2, val_rho3, val_rho4;
} diew_region_point;

/* numeric_mode = 0 uses the closed-form thresholds, 1 the optimizer. */
DIEW_API diew_status diew_classify_point(double theta, double p, double p1, const char *witness,
                                         int numeric_mode, int restarts, uint64_t seed,
                                         diew_region_point *out);

/*
 * Sweep an inclusive (theta, p) grid at fixed p1 and write the region
 * CSV (columns theta,p,p1,v_rho1..v_rho4,enhanced[,val_rho1..val_rho4])
 * to csv_path. Traversal is row-major with theta outer.
 */
DIEW_API diew_status diew_scan_csv(const char *witness, int numeric_mode, double theta_start,
                                   double theta_stop, int theta_count, double p_start,
                                   double p_stop, int p_count, double p1, int restarts,
                                   uint64_t seed, const char *csv_path);

#ifdef __cplusplus
}
#endif

#endif /* DIEW_H */

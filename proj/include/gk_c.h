#ifndef GK_C_H
#define GK_C_H

/* C interface to the verification suites.  All entry points return a
 * gk_status; functions that produce data write through out parameters.
 * A failing suite is not an API error: the run succeeds and the report
 * carries the failing cases. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gk_status {
  GK_OK = 0,
  GK_ERR_ARG = 1, /* invalid argument or precondition */
  GK_ERR_IO = 2   /* file could not be written */
} gk_status;

/* Opaque suite report handle. */
typedef struct gk_report gk_report;

/* Human-readable message for the last failure on this thread. */
const char* gk_last_error(void);

/* Suite runners.  On GK_OK the new report is stored in *out and must be
 * released with gk_report_free.  tol <= 0 keeps the per-case defaults. */
gk_status gk_run_point_suite(int seeds, int n, double tol, uint64_t seed,
                             gk_report** out);
gk_status gk_run_group_suite(int samples, double h, uint64_t seed,
                             gk_report** out);
gk_status gk_run_moduli_suite(int seeds, uint64_t seed, gk_report** out);
gk_status gk_run_hopf_suite(int grid, uint64_t seed, gk_report** out);
gk_status gk_run_deform_suite(double t, double eps, uint64_t seed,
                              gk_report** out);

void gk_report_free(gk_report* r);

/* 1 when every case passes, 0 otherwise. */
int gk_report_pass(const gk_report* r);

int gk_report_case_count(const gk_report* r);

/* Case accessor; the id pointer stays valid for the life of the report. */
gk_status gk_report_case(const gk_report* r, int index, const char** id,
                         double* residual, double* tolerance, int* pass);

/* Measured convention constants: "c0", "c_cartan" or "c_z". */
gk_status gk_report_constant(const gk_report* r, const char* name,
                             double* out);

/* Replaces every case tolerance and recomputes the pass flags. */
gk_status gk_report_override_tolerances(gk_report* r, double tol);

/* Serializes the report ("json" or "csv").  The returned pointer belongs
 * to the report and stays valid until the next render call on it or
 * gk_report_free.  Wall times are included only when include_walls is
 * nonzero; without them identical runs render identical bytes. */
const char* gk_report_render(gk_report* r, const char* format,
                             int include_walls);

/* Writes the Hopf potential grid CSV (grid*grid rows plus a header). */
gk_status gk_write_potential_grid(const char* path, int grid);

#ifdef __cplusplus
}
#endif

#endif /* GK_C_H */

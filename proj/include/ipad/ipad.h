#ifndef IPAD_C_API_H_
#define IPAD_C_API_H_

/* C interface of the IPAD toolkit: opaque handles, plain structs and status
 * codes over the C++ core. All functions are safe for concurrent use on
 * distinct handles; the error message buffer is thread-local. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* status codes */
typedef enum ipad_status {
  IPAD_OK = 0,
  IPAD_EINVAL = 1,  /* bad argument or configuration */
  IPAD_EIO = 2,     /* file I/O failure */
  IPAD_ENUMERIC = 3 /* numeric failure inside a solve */
} ipad_status;

extern const char* ipad_status_str(ipad_status status);

/* message of the last failing call on this thread ("" when none) */
extern const char* ipad_last_error(void);

extern const char* ipad_version(void);

/* termination of a finished run */
enum {
  IPAD_TERM_CONVERGED = 0,
  IPAD_TERM_MAX_OUTER = 1,
  IPAD_TERM_STALLED = 2
};

/* stop-rule mode */
enum { IPAD_STOP_SYNTH = 0, IPAD_STOP_REAL = 1 };

/* Solve options. Negative C or nonpositive eta/tol/rho/steps select the
 * documented per-variant defaults; ipad_options_default fills the sentinel
 * values so a zero-initialized struct is not required. */
typedef struct ipad_options {
  double c_x;
  double c_y;
  double eta1;
  double eta2;
  long max_outer;
  long max_inner;
  double outer_tol;
  int stop_mode;
  double abs_error_floor;
  uint64_t seed;
  double pith_step_scale;
  long pith_max_steps;
  double dict_step_scale; /* <= 0: preset default */
  double admm_rho;
  long admm_max_steps;
} ipad_options;

extern void ipad_options_default(ipad_options* options);

/* variant presets: "palm", "mpalm", "inv", "ipad-pith", "ipad-admm",
 * "ipad-p2a" */
extern int ipad_variant_is_valid(const char* name);
/* comma-separated list of preset names (static storage) */
extern const char* ipad_variant_list(void);

/* ---- problem instances ---- */

typedef struct ipad_instance ipad_instance;

/* synthetic instance: data = D* W*^T + sigma * noise with k nonzeros per
 * code row; deterministic in the seed */
extern ipad_status ipad_instance_synth(long n, long m, long p, long k,
                                       double sigma, double lambda,
                                       uint64_t seed, ipad_instance** out);

/* wrap a caller-provided column-major n-by-p data matrix; box_bound <= 0
 * means no box constraint on the codes */
extern ipad_status ipad_instance_create(const double* data, long n, long p,
                                        long m, double lambda,
                                        double box_bound, ipad_instance** out);

extern void ipad_instance_free(ipad_instance* instance);

extern long ipad_instance_n(const ipad_instance* instance);
extern long ipad_instance_m(const ipad_instance* instance);
extern long ipad_instance_p(const ipad_instance* instance);

/* ---- solving ---- */

typedef struct ipad_run ipad_run;

/* One row of the iteration trace. Row 0 is the initial snapshot. */
typedef struct ipad_trace_row {
  long t;
  double psi;
  double dx_rel;
  double dy_rel;
  double ex_norm;
  double ey_norm;
  long inner_x;
  long inner_y;
  double elapsed_s;
  double dx_norm;
  double dy_norm;
  double dpsi_rel;
  double x_prev_norm;
  double y_prev_norm;
} ipad_trace_row;

/* Runs the selected variant from the default deterministic initial point
 * (random unit-column dictionary seeded by options->seed, zero codes). */
extern ipad_status ipad_solve(const ipad_instance* instance,
                              const char* variant,
                              const ipad_options* options, ipad_run** out);

extern void ipad_run_free(ipad_run* run);

extern long ipad_run_steps(const ipad_run* run); /* trace rows, incl. t = 0 */
extern ipad_status ipad_run_row(const ipad_run* run, long index,
                               ipad_trace_row* out);
extern int ipad_run_termination(const ipad_run* run);
extern double ipad_run_objective(const ipad_run* run);
extern double ipad_run_seconds(const ipad_run* run);
extern long ipad_run_outer_iters(const ipad_run* run);
/* options after per-variant resolution, as used by the solver */
extern void ipad_run_resolved_options(const ipad_run* run, ipad_options* out);

/* final blocks, column-major; the buffer must hold rows*cols doubles */
extern ipad_status ipad_run_dictionary(const ipad_run* run, double* out,
                                       size_t capacity);
extern ipad_status ipad_run_codes(const ipad_run* run, double* out,
                                  size_t capacity);

/* ---- diagnostics ---- */

/* Lemma-style constants for the resolved options; lipschitz_m is an estimate
 * for grad H on the iterate hull (enters b only). */
extern ipad_status ipad_descent_constants(const ipad_options* options,
                                          const char* variant,
                                          double lipschitz_m, double* a,
                                          double* b);

/* Sufficient-descent audit over trace rows (row 0 included). */
extern ipad_status ipad_audit_rows(const ipad_trace_row* rows, long count,
                                   double a, double rel_tol, long* violations,
                                   double* worst_margin);

/* Post-hoc acceptance-inequality check over trace rows. */
extern ipad_status ipad_criterion_violations(const ipad_trace_row* rows,
                                             long count, double c_x, double c_y,
                                             double abs_floor, long* violations);

/* ---- image harness ---- */

/* reads a binary P5 PGM with maxval 255; pixels malloc'd, ipad_buffer_free */
extern ipad_status ipad_pgm_read(const char* path, uint8_t** pixels,
                                 long* width, long* height);
extern ipad_status ipad_pgm_write(const char* path, const uint8_t* pixels,
                                  long width, long height);
extern void ipad_buffer_free(void* buffer);

extern ipad_status ipad_add_noise(const uint8_t* pixels, long width,
                                  long height, double sigma, uint64_t seed,
                                  uint8_t* out);
extern ipad_status ipad_psnr(const uint8_t* a, const uint8_t* b, long width,
                             long height, double* out_db);

typedef struct ipad_denoise_report {
  double psnr_noisy;
  double psnr_recovered;
  double lambda; /* resolved penalty */
  long outer_iters;
  int termination;
  double seconds;
} ipad_denoise_report;

/* Adds sigma-noise to the clean image (seeded), learns a dictionary on the
 * noisy patches with the requested variant and real-mode stop rule, and
 * reconstructs. noisy/recovered must hold width*height bytes each; lambda <= 0
 * selects the sigma-dependent default; run_out may be NULL. */
extern ipad_status ipad_denoise(const uint8_t* clean, long width, long height,
                                double sigma, uint64_t noise_seed,
                                const char* variant,
                                const ipad_options* options, long stride,
                                long atoms, double lambda, uint8_t* noisy,
                                uint8_t* recovered, ipad_denoise_report* report,
                                ipad_run** run_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IPAD_C_API_H_ */

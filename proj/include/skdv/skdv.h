#ifndef SKDV_SKDV_H
#define SKDV_SKDV_H

/* C interface to the Schrodinger-KdV half-line solver.
 *
 * Every function returns an skdv_status. On failure the message of the most
 * recent error on the calling thread is available from skdv_last_error().
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function (passing NULL is allowed). */

#include <stddef.h>

#if defined(_WIN32)
#define SKDV_API __declspec(dllexport)
#else
#define SKDV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum skdv_status {
    SKDV_OK = 0,
    SKDV_E_ARGUMENT = 1,    /* null pointer, unknown name, buffer too small */
    SKDV_E_CONFIG = 2,      /* invalid configuration or data */
    SKDV_E_RANGE = 3,       /* argument outside the supported domain */
    SKDV_E_CONVERGENCE = 4, /* quadrature did not reach its tolerance */
    SKDV_E_HALTED = 5,      /* non-finite values during time stepping */
    SKDV_E_IO = 6,
    SKDV_E_INTERNAL = 7
} skdv_status;

/* Values coincide with the command-line exit codes. */
typedef enum skdv_verdict {
    SKDV_VERDICT_NONE = -1, /* plain run, no theorem check */
    SKDV_VERDICT_PASS = 0,
    SKDV_VERDICT_FAIL = 2,
    SKDV_VERDICT_HYPOTHESES_NOT_MET = 3,
    SKDV_VERDICT_HALTED = 4
} skdv_verdict;

typedef struct skdv_config skdv_config;
typedef struct skdv_run skdv_run;

SKDV_API const char* skdv_last_error(void);
SKDV_API const char* skdv_version(void);
SKDV_API const char* skdv_status_name(skdv_status status);

/* Ai(x) and the kernel 3^{-1/3} Ai(3^{-1/3} x) of the linear KdV flow. */
SKDV_API skdv_status skdv_airy(double x, double* value);
SKDV_API skdv_status skdv_airy_kernel(double x, double* value);

/* Configuration: INI text with sections grid, coupling, initial, boundary,
 * time, run. Keys are addressed as "section.key". */
SKDV_API skdv_status skdv_config_new(skdv_config** out);
SKDV_API skdv_status skdv_config_load(const char* path, skdv_config** out);
SKDV_API skdv_status skdv_config_parse(const char* ini_text, skdv_config** out);
/* Defaults of a named scenario: "t13", "t14a" or "t14b". */
SKDV_API skdv_status skdv_config_scenario(const char* name, skdv_config** out);
SKDV_API skdv_status skdv_config_set(skdv_config* cfg, const char* key, const char* value);
/* "section.key=value" */
SKDV_API skdv_status skdv_config_override(skdv_config* cfg, const char* assignment);
SKDV_API skdv_status skdv_config_validate(const skdv_config* cfg);
SKDV_API void skdv_config_free(skdv_config* cfg);

/* Integrates the configured problem. A NaN halt is not an error here: the run
 * handle is returned and skdv_run_halted reports it. */
SKDV_API skdv_status skdv_run_create(const skdv_config* cfg, skdv_run** out);
/* Runs a scenario with the given configuration, or its defaults when cfg is NULL. */
SKDV_API skdv_status skdv_scenario_run(const char* name, const skdv_config* cfg, skdv_run** out);

SKDV_API skdv_status skdv_run_halted(const skdv_run* run, int* halted, double* halt_time);
SKDV_API skdv_status skdv_run_verdict(const skdv_run* run, skdv_verdict* verdict);
SKDV_API skdv_status skdv_run_sample_count(const skdv_run* run, size_t* count);
/* Copies one column of the diagnostic series (t, M, Q, E, Qu, Qv, E1, E2,
 * w_u1, w_v1, w_u2, eta, eta_d2_fd, eta_d2_rhs, P, r_mass, r_moment, r_energy)
 * into out, which must hold skdv_run_sample_count values. */
SKDV_API skdv_status skdv_run_column(const skdv_run* run, const char* column, double* out, size_t capacity);

typedef struct skdv_residuals {
    double r_mass;
    double r_moment;
    double r_energy;
    double r_first_moment_rate;
    double r_virial_mid; /* left half-line with zero boundary data, zero otherwise */
    double r_virial_max;
} skdv_residuals;

SKDV_API skdv_status skdv_run_residuals(const skdv_run* run, skdv_residuals* out);
SKDV_API skdv_status skdv_run_warning_count(const skdv_run* run, size_t* count);
/* The returned text lives as long as the run handle. */
SKDV_API skdv_status skdv_run_warning(const skdv_run* run, size_t index, const char** text);
/* Writes series.csv, summary.json and, for scenarios, verdict.json. */
SKDV_API skdv_status skdv_run_write(const skdv_run* run, const char* outdir);
SKDV_API void skdv_run_free(skdv_run* run);

typedef struct skdv_operator_report {
    char op[8];
    char profile[48];
    double trace_error;
    double pde_residual;
    double normalization_constant;
    double convergence_order;
} skdv_operator_report;

/* Checks the Laplace (reports[0]) and Airy-potential (reports[1]) boundary
 * operators on t^2 e^{-t}; writes validation JSON files when outdir is not NULL. */
SKDV_API skdv_status skdv_validate_boundary_ops(const char* outdir, skdv_operator_report reports[2]);

#define SKDV_MMS_MAX_LEVELS 8

typedef struct skdv_mms_options {
    int left;          /* 0: right half-line, 1: left */
    int levels;        /* at least 3, at most SKDV_MMS_MAX_LEVELS */
    int base_cells;
    double base_dt;
    double t_final;
    double amplitude;  /* 0 gives the trivial zero solution */
} skdv_mms_options;

typedef struct skdv_mms_report {
    int levels;
    int cells[SKDV_MMS_MAX_LEVELS];
    double dt[SKDV_MMS_MAX_LEVELS];
    double error[SKDV_MMS_MAX_LEVELS];
    double order; /* NaN when an error vanishes */
    int monotone;
} skdv_mms_report;

SKDV_API void skdv_mms_default_options(skdv_mms_options* opt);
/* Writes convergence.json when outdir is not NULL. */
SKDV_API skdv_status skdv_convergence_study(const skdv_mms_options* opt, const char* outdir,
                                            skdv_mms_report* report);

#ifdef __cplusplus
}
#endif

#endif

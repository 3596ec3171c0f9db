/*
 * nomafbl: finite-blocklength OMA/NOMA two-user uplink performance.
 *
 * C interface to the shared library. Every function returns a status code;
 * on failure nomafbl_last_error() describes the cause (per thread, valid
 * until the next call on the same thread). Handles are opaque and owned by
 * the caller, who must release them with the matching *_free function.
 *
 * Text outputs go to caller-provided buffers: pass buf = NULL and cap = 0 to
 * query the size. *needed always receives the size including the
 * terminating NUL; NOMAFBL_ERR_BUFFER_TOO_SMALL is returned when cap is
 * smaller.
 */
#ifndef NOMAFBL_H
#define NOMAFBL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NOMAFBL_BUILDING)
#    define NOMAFBL_API __declspec(dllexport)
#  else
#    define NOMAFBL_API __declspec(dllimport)
#  endif
#else
#  define NOMAFBL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nomafbl_status {
  NOMAFBL_OK = 0,
  NOMAFBL_ERR_DOMAIN = 1,       /* argument outside an operation's domain */
  NOMAFBL_ERR_NUMERICAL = 2,    /* quadrature failure or consistency violation */
  NOMAFBL_ERR_CONFIG = 3,       /* malformed or inconsistent configuration */
  NOMAFBL_ERR_IO = 4,
  NOMAFBL_ERR_NO_FEASIBLE = 5,  /* argmax over an all-infeasible range */
  NOMAFBL_ERR_INVALID_ARGUMENT = 6, /* NULL handle/pointer, index out of range */
  NOMAFBL_ERR_BUFFER_TOO_SMALL = 7,
  NOMAFBL_ERR_INTERNAL = 99
} nomafbl_status;

/* Validity flag bits carried by records. */
#define NOMAFBL_FLAG_SHORT_BLOCKLENGTH 0x01u
#define NOMAFBL_FLAG_RATE_CLAMPED 0x02u
#define NOMAFBL_FLAG_QUADRATURE_FALLBACK 0x04u
#define NOMAFBL_FLAG_CLOSED_FORM_MISMATCH 0x08u
#define NOMAFBL_FLAG_DOMAIN_ERROR 0x10u
#define NOMAFBL_FLAG_ZERO_POWER 0x20u

typedef enum nomafbl_unit { NOMAFBL_BITS = 0, NOMAFBL_NATS = 1 } nomafbl_unit;
typedef enum nomafbl_scheme { NOMAFBL_OMA = 0, NOMAFBL_NOMA = 1 } nomafbl_scheme;
typedef enum nomafbl_evaluator {
  NOMAFBL_CLOSED_FORM = 0,
  NOMAFBL_QUADRATURE = 1,
  NOMAFBL_MONTECARLO = 2
} nomafbl_evaluator;
typedef enum nomafbl_latency_model {
  NOMAFBL_PAPER_LITERAL = 0,
  NOMAFBL_EXPECTED_ROUNDS = 1
} nomafbl_latency_model;

typedef struct nomafbl_record {
  nomafbl_scheme scheme;
  int user;
  double k;
  double n;
  double beta;
  double p1_db;
  double p2_db;
  int m_max;
  nomafbl_latency_model latency_model;
  nomafbl_evaluator evaluator;
  double epsilon;
  double throughput;
  double expected_channel_uses;
  uint32_t flags;
} nomafbl_record;

typedef struct nomafbl_config nomafbl_config;
typedef struct nomafbl_dataset nomafbl_dataset;
typedef struct nomafbl_validation nomafbl_validation;

NOMAFBL_API const char* nomafbl_version(void);
NOMAFBL_API const char* nomafbl_last_error(void);
NOMAFBL_API const char* nomafbl_status_name(nomafbl_status status);

/* ---- scalar primitives ------------------------------------------------ */

NOMAFBL_API nomafbl_status nomafbl_q_func(double x, double* out);
NOMAFBL_API nomafbl_status nomafbl_q_inv(double p, double* out);
NOMAFBL_API nomafbl_status nomafbl_capacity(double rho, nomafbl_unit unit, double* out);
NOMAFBL_API nomafbl_status nomafbl_dispersion(double rho, nomafbl_unit unit, double* out);
NOMAFBL_API nomafbl_status nomafbl_awgn_error_prob(double k, double n, double rho,
                                                   int half_log_correction, double* eps,
                                                   uint32_t* flags);
NOMAFBL_API nomafbl_status nomafbl_achievable_rate(double n, double eps, double rho,
                                                   nomafbl_unit unit, double* rate,
                                                   uint32_t* flags);
/* Surrogate (linearized) outage under unit-mean exponential fading. */
NOMAFBL_API nomafbl_status nomafbl_fading_outage(double k, double n_eff, double rho,
                                                 nomafbl_unit unit, double* eps,
                                                 uint32_t* flags);
/* Exact expectation of the conditional error by adaptive quadrature. */
NOMAFBL_API nomafbl_status nomafbl_exact_fading_outage(double k, double n_eff, double rho,
                                                       nomafbl_unit unit, double* eps);
NOMAFBL_API nomafbl_status nomafbl_arq_throughput(double k, double n, double eps, int m_max,
                                                  double feedback_delay,
                                                  nomafbl_latency_model model, double* out);

/* ---- configuration ---------------------------------------------------- */

NOMAFBL_API nomafbl_status nomafbl_config_new(nomafbl_config** out);
NOMAFBL_API void nomafbl_config_free(nomafbl_config* cfg);
/* Replaces the document with the parsed file / text. */
NOMAFBL_API nomafbl_status nomafbl_config_load_file(nomafbl_config* cfg, const char* path);
NOMAFBL_API nomafbl_status nomafbl_config_load_string(nomafbl_config* cfg, const char* text);
/* key is "section.key"; the value is validated when the config is resolved. */
NOMAFBL_API nomafbl_status nomafbl_config_set(nomafbl_config* cfg, const char* key,
                                              const char* value);
/* Resolves the document and reports the first error, if any. */
NOMAFBL_API nomafbl_status nomafbl_config_check(const nomafbl_config* cfg);
/* Canonical INI text of the resolved config; include_runtime adds the
   keys that do not affect results (sim.threads, output.dir). */
NOMAFBL_API nomafbl_status nomafbl_config_render(const nomafbl_config* cfg, int include_runtime,
                                                 char* buf, size_t cap, size_t* needed);
NOMAFBL_API nomafbl_status nomafbl_config_hash(const nomafbl_config* cfg, char* buf, size_t cap,
                                               size_t* needed);
/* Newline-separated list of every accepted key. */
NOMAFBL_API nomafbl_status nomafbl_config_keys(char* buf, size_t cap, size_t* needed);
/* Newline-separated list of reproducible figure ids. */
NOMAFBL_API nomafbl_status nomafbl_figure_ids(char* buf, size_t cap, size_t* needed);

/* ---- computations ----------------------------------------------------- */

/* Both users at [point] for point.scheme (or both schemes) and every
   point.evaluators entry. */
NOMAFBL_API nomafbl_status nomafbl_eval(const nomafbl_config* cfg, nomafbl_dataset** out);
/* The [sweep] section (optionally derived from sweep.figure). */
NOMAFBL_API nomafbl_status nomafbl_sweep(const nomafbl_config* cfg, nomafbl_dataset** out);
/* Canonical sweep of one figure; config keys still override its defaults. */
NOMAFBL_API nomafbl_status nomafbl_reproduce(const nomafbl_config* cfg, const char* figure_id,
                                             nomafbl_dataset** out);
NOMAFBL_API nomafbl_status nomafbl_validate(const nomafbl_config* cfg,
                                            nomafbl_validation** out);

/* ---- datasets --------------------------------------------------------- */

NOMAFBL_API void nomafbl_dataset_free(nomafbl_dataset* ds);
NOMAFBL_API nomafbl_status nomafbl_dataset_size(const nomafbl_dataset* ds, size_t* out);
NOMAFBL_API nomafbl_status nomafbl_dataset_record(const nomafbl_dataset* ds, size_t index,
                                                  nomafbl_record* out);
NOMAFBL_API nomafbl_status nomafbl_dataset_csv(const nomafbl_dataset* ds, char* buf, size_t cap,
                                               size_t* needed);
/* Writes <dir>/<stem>_<hash>.csv (and .dat plot data when the dataset
   belongs to a figure); dir NULL = output.dir of the config. The written
   paths, newline-separated, go to buf. */
NOMAFBL_API nomafbl_status nomafbl_dataset_write(const nomafbl_dataset* ds, const char* dir,
                                                 char* buf, size_t cap, size_t* needed);
/* Per-curve throughput optima and, for figures, the shape checks. */
NOMAFBL_API nomafbl_status nomafbl_dataset_summary(const nomafbl_dataset* ds, char* buf,
                                                   size_t cap, size_t* needed);
/* 1 when every gating shape check passed (always 1 without checks). */
NOMAFBL_API nomafbl_status nomafbl_dataset_checks_passed(const nomafbl_dataset* ds, int* out);

/* ---- validation ------------------------------------------------------- */

NOMAFBL_API void nomafbl_validation_free(nomafbl_validation* v);
NOMAFBL_API nomafbl_status nomafbl_validation_report(const nomafbl_validation* v, char* buf,
                                                     size_t cap, size_t* needed);
/* Writes the report to <dir>/validate_<hash>.txt (dir NULL = output.dir);
   the written path goes to buf. */
NOMAFBL_API nomafbl_status nomafbl_validation_write(const nomafbl_validation* v, const char* dir,
                                                    char* buf, size_t cap, size_t* needed);
NOMAFBL_API nomafbl_status nomafbl_validation_passed(const nomafbl_validation* v, int* out);
NOMAFBL_API nomafbl_status nomafbl_validation_max_abs_z(const nomafbl_validation* v,
                                                        double* out);

#ifdef __cplusplus
}
#endif

#endif /* NOMAFBL_H */

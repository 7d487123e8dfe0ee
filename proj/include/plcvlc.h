/* Copyright 2026 The plcvlc Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef PLCVLC_H_
#define PLCVLC_H_

/* C interface to the cascaded PLC/VLC analysis library.
 *
 * Every call returns a plcvlc_status. On failure, plcvlc_last_error()
 * returns a message for the calling thread until its next failing call.
 * Strings handed out by the library are released with plcvlc_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(PLCVLC_BUILDING)
#define PLCVLC_API __attribute__((visibility("default")))
#else
#define PLCVLC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plcvlc_status {
  PLCVLC_OK = 0,
  PLCVLC_ERR_ARGUMENT = 1,   /* null handle, bad enum, out-of-domain input */
  PLCVLC_ERR_PARSE = 2,      /* malformed config text or sweep spec */
  PLCVLC_ERR_VALIDATION = 3, /* invalid or conflicting config values */
  PLCVLC_ERR_NUMERICAL = 4,  /* non-finite result or failed fit */
  PLCVLC_ERR_AGREEMENT = 5,  /* an analytic-vs-MC check failed */
  PLCVLC_ERR_IO = 6,
  PLCVLC_ERR_INTERNAL = 7
} plcvlc_status;

typedef enum plcvlc_metric {
  PLCVLC_METRIC_OP = 0,
  PLCVLC_METRIC_BEP = 1,
  PLCVLC_METRIC_CAPACITY = 2
} plcvlc_metric;

typedef enum plcvlc_quantity {
  PLCVLC_PLC_CDF = 0,
  PLCVLC_PLC_PDF = 1,
  PLCVLC_VLC_CDF = 2, /* best of N */
  PLCVLC_VLC_PDF = 3,
  PLCVLC_E2E_CDF = 4,
  PLCVLC_E2E_PDF = 5
} plcvlc_quantity;

typedef struct plcvlc_config plcvlc_config;
typedef struct plcvlc_model plcvlc_model;

typedef struct plcvlc_mc_result {
  double mean;
  double std_error;
  uint64_t trials;
} plcvlc_mc_result;

typedef struct plcvlc_support {
  double gamma_e;
  double gamma_c;
} plcvlc_support;

PLCVLC_API const char* plcvlc_last_error(void);
PLCVLC_API const char* plcvlc_version(void);
PLCVLC_API void plcvlc_string_free(char* s);

/* Configuration. A fresh config holds every default. */
PLCVLC_API plcvlc_status plcvlc_config_new(plcvlc_config** out);
PLCVLC_API plcvlc_status plcvlc_config_load_file(const char* path, plcvlc_config** out);
PLCVLC_API plcvlc_status plcvlc_config_parse(const char* text, plcvlc_config** out);
PLCVLC_API void plcvlc_config_free(plcvlc_config* cfg);
/* Applies one `key = value` setting and re-validates the whole config. */
PLCVLC_API plcvlc_status plcvlc_config_set(plcvlc_config* cfg, const char* key, const char* value);
/* "var:start:stop:points[:log]"; replaces any sweep given in the file. */
PLCVLC_API plcvlc_status plcvlc_config_set_sweep(plcvlc_config* cfg, const char* spec);
PLCVLC_API plcvlc_status plcvlc_config_has_sweep(const plcvlc_config* cfg, int* out);

/* Models (including the lognormal-sum fit) are immutable once built. */
PLCVLC_API plcvlc_status plcvlc_model_new(const plcvlc_config* cfg, plcvlc_model** out);
PLCVLC_API void plcvlc_model_free(plcvlc_model* model);
PLCVLC_API plcvlc_status plcvlc_model_eval(const plcvlc_model* model, plcvlc_quantity q,
                                           double gamma, double* out);
PLCVLC_API plcvlc_status plcvlc_model_support(const plcvlc_model* model, plcvlc_support* out);
/* 1 when the cell edge lies outside the receiver FOV, where the constant
 * concentrator gain of the closed forms no longer holds. */
PLCVLC_API plcvlc_status plcvlc_model_edge_outside_fov(const plcvlc_model* model, int* out);
/* Metric at the config's threshold, modulation and quadrature settings. */
PLCVLC_API plcvlc_status plcvlc_model_metric(const plcvlc_model* model, plcvlc_metric metric,
                                             double* out);
PLCVLC_API plcvlc_status plcvlc_model_mc(const plcvlc_model* model, plcvlc_metric metric,
                                         plcvlc_mc_result* out);

/* Sweep over the config's sweep spec; *csv_out receives the CSV text.
 * With MC, returns PLCVLC_ERR_AGREEMENT (and still fills *csv_out) when
 * any point fails its agreement check. */
PLCVLC_API plcvlc_status plcvlc_run_metric(const plcvlc_config* cfg, plcvlc_metric metric,
                                           int with_mc, char** csv_out);

/* Fit report as `key = value` lines. */
PLCVLC_API plcvlc_status plcvlc_fit_report(const plcvlc_config* cfg, char** report_out);

/* Full analytic-vs-MC scenario set as CSV with a leading scenario column.
 * Returns PLCVLC_ERR_AGREEMENT (CSV still filled) if any point fails. */
PLCVLC_API plcvlc_status plcvlc_validate(const plcvlc_config* cfg, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* PLCVLC_H_ */

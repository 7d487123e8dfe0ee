// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "plcvlc.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "cascade.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "sweep.hpp"

struct plcvlc_config {
  plcvlc::config::RunConfig cfg;
};

struct plcvlc_model {
  plcvlc::config::RunConfig cfg;
  plcvlc::cascade::CascadeModel model;
};

namespace {

thread_local std::string last_error;

plcvlc_status status_of(plcvlc::ErrorKind kind) {
  using plcvlc::ErrorKind;
  switch (kind) {
    case ErrorKind::Domain: return PLCVLC_ERR_ARGUMENT;
    case ErrorKind::Parse: return PLCVLC_ERR_PARSE;
    case ErrorKind::Validation:
    case ErrorKind::Conflict: return PLCVLC_ERR_VALIDATION;
    case ErrorKind::Numerical:
    case ErrorKind::FitFailure: return PLCVLC_ERR_NUMERICAL;
    case ErrorKind::Io: return PLCVLC_ERR_IO;
  }
  return PLCVLC_ERR_INTERNAL;
}

plcvlc_status set_error(plcvlc_status status, std::string msg) {
  last_error = std::move(msg);
  return status;
}

template <class F>
plcvlc_status guarded(F&& body) {
  try {
    return body();
  } catch (const plcvlc::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PLCVLC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PLCVLC_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(PLCVLC_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::optional<plcvlc::sweep::Metric> to_metric(plcvlc_metric m) {
  switch (m) {
    case PLCVLC_METRIC_OP: return plcvlc::sweep::Metric::Op;
    case PLCVLC_METRIC_BEP: return plcvlc::sweep::Metric::Bep;
    case PLCVLC_METRIC_CAPACITY: return plcvlc::sweep::Metric::Capacity;
  }
  return std::nullopt;
}

#define PLCVLC_REQUIRE_ARG(cond, msg) \
  if (!(cond)) return set_error(PLCVLC_ERR_ARGUMENT, msg)

}  // namespace

extern "C" {

const char* plcvlc_last_error(void) { return last_error.c_str(); }

const char* plcvlc_version(void) { return "0.1.0"; }

void plcvlc_string_free(char* s) { std::free(s); }

plcvlc_status plcvlc_config_new(plcvlc_config** out) {
  PLCVLC_REQUIRE_ARG(out, "null output pointer");
  return guarded([&] {
    *out = new plcvlc_config{};
    return PLCVLC_OK;
  });
}

plcvlc_status plcvlc_config_load_file(const char* path, plcvlc_config** out) {
  PLCVLC_REQUIRE_ARG(path && out, "null argument");
  return guarded([&] {
    *out = new plcvlc_config{plcvlc::config::load_config(path)};
    return PLCVLC_OK;
  });
}

plcvlc_status plcvlc_config_parse(const char* text, plcvlc_config** out) {
  PLCVLC_REQUIRE_ARG(text && out, "null argument");
  return guarded([&] {
    *out = new plcvlc_config{plcvlc::config::parse_config(text)};
    return PLCVLC_OK;
  });
}

void plcvlc_config_free(plcvlc_config* cfg) { delete cfg; }

plcvlc_status plcvlc_config_set(plcvlc_config* cfg, const char* key, const char* value) {
  PLCVLC_REQUIRE_ARG(cfg && key && value, "null argument");
  return guarded([&] {
    auto updated = cfg->cfg;
    plcvlc::config::apply_setting(updated, key, value);
    updated.validate();
    cfg->cfg = std::move(updated);
    return PLCVLC_OK;
  });
}

plcvlc_status plcvlc_config_set_sweep(plcvlc_config* cfg, const char* spec) {
  PLCVLC_REQUIRE_ARG(cfg && spec, "null argument");
  return guarded([&] {
    cfg->cfg.sweep = plcvlc::config::parse_sweep(spec);
    return PLCVLC_OK;
  });
}

plcvlc_status plcvlc_config_has_sweep(const plcvlc_config* cfg, int* out) {
  PLCVLC_REQUIRE_ARG(cfg && out, "null argument");
  *out = cfg->cfg.sweep.has_value() ? 1 : 0;
  return PLCVLC_OK;
}

plcvlc_status plcvlc_model_new(const plcvlc_config* cfg, plcvlc_model** out) {
  PLCVLC_REQUIRE_ARG(cfg && out, "null argument");
  return guarded([&] {
    *out = new plcvlc_model{cfg->cfg, plcvlc::config::build_model(cfg->cfg)};
    return PLCVLC_OK;
  });
}

void plcvlc_model_free(plcvlc_model* model) { delete model; }

plcvlc_status plcvlc_model_eval(const plcvlc_model* model, plcvlc_quantity q, double gamma,
                                double* out) {
  PLCVLC_REQUIRE_ARG(model && out, "null argument");
  PLCVLC_REQUIRE_ARG(gamma > 0.0, "gamma must be positive");
  return guarded([&] {
    const auto& m = model->model;
    switch (q) {
      case PLCVLC_PLC_CDF: *out = m.plc.cdf(gamma); break;
      case PLCVLC_PLC_PDF: *out = m.plc.pdf(gamma); break;
      case PLCVLC_VLC_CDF: *out = plcvlc::vlc::vlc_cdf_max(gamma, m.vlc); break;
      case PLCVLC_VLC_PDF: *out = plcvlc::vlc::vlc_pdf_max(gamma, m.vlc); break;
      case PLCVLC_E2E_CDF: *out = plcvlc::cascade::end_to_end_cdf(gamma, m); break;
      case PLCVLC_E2E_PDF: *out = plcvlc::cascade::end_to_end_pdf(gamma, m); break;
      default: return set_error(PLCVLC_ERR_ARGUMENT, "unknown quantity");
    }
    return PLCVLC_OK;
  });
}

plcvlc_status plcvlc_model_support(const plcvlc_model* model, plcvlc_support* out) {
  PLCVLC_REQUIRE_ARG(model && out, "null argument");
  out->gamma_e = model->model.vlc.gamma_e();
  out->gamma_c = model->model.vlc.gamma_c();
  return PLCVLC_OK;
}

plcvlc_status plcvlc_model_edge_outside_fov(const plcvlc_model* model, int* out) {
  PLCVLC_REQUIRE_ARG(model && out, "null argument");
  *out = model->model.vlc.edge_outside_fov() ? 1 : 0;
  return PLCVLC_OK;
}

plcvlc_status plcvlc_model_metric(const plcvlc_model* model, plcvlc_metric metric, double* out) {
  PLCVLC_REQUIRE_ARG(model && out, "null argument");
  const auto m = to_metric(metric);
  PLCVLC_REQUIRE_ARG(m, "unknown metric");
  return guarded([&] {
    *out = plcvlc::sweep::evaluate_metric(model->model, *m, model->cfg);
    return PLCVLC_OK;
  });
}

plcvlc_status plcvlc_model_mc(const plcvlc_model* model, plcvlc_metric metric,
                              plcvlc_mc_result* out) {
  PLCVLC_REQUIRE_ARG(model && out, "null argument");
  const auto m = to_metric(metric);
  PLCVLC_REQUIRE_ARG(m, "unknown metric");
  return guarded([&] {
    const auto est = plcvlc::sweep::estimate_metric(model->model, *m, model->cfg);
    *out = {est.mean, est.std_error, est.trials};
    return PLCVLC_OK;
  });
}

plcvlc_status plcvlc_run_metric(const plcvlc_config* cfg, plcvlc_metric metric, int with_mc,
                                char** csv_out) {
  PLCVLC_REQUIRE_ARG(cfg && csv_out, "null argument");
  const auto m = to_metric(metric);
  PLCVLC_REQUIRE_ARG(m, "unknown metric");
  if (!cfg->cfg.sweep) return set_error(PLCVLC_ERR_VALIDATION, "no sweep given (use --sweep or sweep.spec)");
  return guarded([&] {
    const auto rows = plcvlc::sweep::run_metric(cfg->cfg, *m, *cfg->cfg.sweep, with_mc != 0);
    *csv_out = copy_string(plcvlc::sweep::to_csv(rows));
    for (const auto& r : rows) {
      if (r.mc && !r.mc->pass)
        return set_error(PLCVLC_ERR_AGREEMENT,
                         "analytic and Monte Carlo values disagree at " +
                             std::string(plcvlc::config::sweep_variable_name(r.variable)) + " = " +
                             plcvlc::sweep::format_number(r.value));
    }
    return PLCVLC_OK;
  });
}

plcvlc_status plcvlc_fit_report(const plcvlc_config* cfg, char** report_out) {
  PLCVLC_REQUIRE_ARG(cfg && report_out, "null argument");
  return guarded([&] {
    const auto report = plcvlc::sweep::fit_report(cfg->cfg);
    *report_out = copy_string(plcvlc::sweep::format_fit_report(report));
    return PLCVLC_OK;
  });
}

plcvlc_status plcvlc_validate(const plcvlc_config* cfg, char** csv_out) {
  PLCVLC_REQUIRE_ARG(cfg && csv_out, "null argument");
  return guarded([&] {
    const auto result = plcvlc::sweep::validate(cfg->cfg);
    *csv_out = copy_string(plcvlc::sweep::to_csv(result.rows, true));
    if (!result.all_pass) {
      int failed = 0;
      for (const auto& r : result.rows) failed += (r.mc && !r.mc->pass) ? 1 : 0;
      return set_error(PLCVLC_ERR_AGREEMENT,
                       std::to_string(failed) + " validation point(s) failed the agreement check");
    }
    return PLCVLC_OK;
  });
}

}  // extern "C"

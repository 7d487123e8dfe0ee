// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Sweep driver: evaluates a metric over a grid of one config variable,
// optionally next to a Monte Carlo estimate, and renders the rows as CSV.

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "mc.hpp"

namespace plcvlc::sweep {

enum class Metric { Op, Bep, Capacity };

std::string_view metric_name(Metric m);

struct SweepRow {
  std::string scenario;  // empty outside `validate`
  config::SweepVariable variable = config::SweepVariable::VlcMeanSnrDb;
  double value = 0.0;
  double analytic = 0.0;
  std::optional<mc::AgreementRecord> mc;
};

/// Grid points, evenly spaced in value or in log(value).
std::vector<double> sweep_grid(const config::SweepSpec& spec);

double evaluate_metric(const cascade::CascadeModel& model, Metric metric,
                       const config::RunConfig& cfg);
mc::McEstimate estimate_metric(const cascade::CascadeModel& model, Metric metric,
                               const config::RunConfig& cfg);

/// One row per grid point, in grid order. Errors name the failing point.
std::vector<SweepRow> run_metric(const config::RunConfig& cfg, Metric metric,
                                 const config::SweepSpec& spec, bool with_mc);

/// 10 significant digits, '.' separator, independent of the C++ locale.
std::string format_number(double v);

/// `sweep_var,sweep_value,analytic,mc_mean,mc_stderr,z,pass`, prefixed by
/// `scenario` when with_scenario is set. MC columns stay empty without MC.
std::string to_csv(const std::vector<SweepRow>& rows, bool with_scenario = false);

struct FitReport {
  int num_wires = 0;
  int num_relays = 0;
  double mu_h = 0.0;
  double sigma2_h = 0.0;
  plc::LognormalSumFit fit;
  double limiting_cdf = 0.0;  // Phi(a0)^M
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

FitReport fit_report(const config::RunConfig& cfg);

/// `key = value` lines, one per field.
std::string format_fit_report(const FitReport& report);

struct ValidationResult {
  std::vector<SweepRow> rows;
  bool all_pass = true;
};

/// The fixed analytic-vs-MC scenario set: outage over four (M, N) pairs,
/// BEP over LED semiangle and height, capacity over the PLC mean SNR. Scenario parameters are applied on top of `base`,
/// which still supplies the fit and Monte Carlo settings.
ValidationResult validate(const config::RunConfig& base);

}  // namespace plcvlc::sweep

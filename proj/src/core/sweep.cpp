// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "sweep.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "parallel.hpp"

namespace plcvlc::sweep {

namespace {

std::string point_label(config::SweepVariable var, double value) {
  return std::string(config::sweep_variable_name(var)) + " = " + format_number(value);
}

std::vector<SweepRow> run_points(const config::RunConfig& base, Metric metric,
                                 config::SweepVariable var, const std::vector<double>& values,
                                 bool with_mc, const std::string& scenario) {
  const int n = static_cast<int>(values.size());
  std::vector<config::RunConfig> configs(n, base);
  std::vector<std::optional<cascade::CascadeModel>> models(n);
  // Models are built in order so the memoized fit is computed once.
  for (int i = 0; i < n; ++i) {
    try {
      config::apply_sweep_value(configs[i], var, values[i]);
      models[i].emplace(config::build_model(configs[i]));
    } catch (const Error& e) {
      throw Error(e.kind(), "at " + point_label(var, values[i]) + ": " + e.what());
    }
  }

  std::vector<SweepRow> rows(n);
  detail::parallel_for(n, [&](int i) {
    try {
      rows[i].scenario = scenario;
      rows[i].variable = var;
      rows[i].value = values[i];
      rows[i].analytic = evaluate_metric(*models[i], metric, configs[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), "at " + point_label(var, values[i]) + ": " + e.what());
    }
  });

  if (with_mc) {
    // Each estimate already fans out over its streams.
    for (int i = 0; i < n; ++i) {
      try {
        const auto est = estimate_metric(*models[i], metric, configs[i]);
        rows[i].mc = mc::compare_report(rows[i].analytic, est, configs[i].z_threshold);
      } catch (const Error& e) {
        throw Error(e.kind(), "at " + point_label(var, values[i]) + ": " + e.what());
      }
    }
  }
  return rows;
}

}  // namespace

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::Op: return "op";
    case Metric::Bep: return "bep";
    case Metric::Capacity: return "capacity";
  }
  return "unknown";
}

std::vector<double> sweep_grid(const config::SweepSpec& spec) {
  spec.validate();
  std::vector<double> out(spec.points);
  const double last = spec.points - 1;
  for (int i = 0; i < spec.points; ++i) {
    const double t = i / last;
    if (spec.scale == config::SweepScale::Log) {
      out[i] = std::exp(std::log(spec.start) + t * (std::log(spec.stop) - std::log(spec.start)));
    } else {
      out[i] = spec.start + t * (spec.stop - spec.start);
    }
  }
  out.front() = spec.start;
  out.back() = spec.stop;
  if (config::is_integer_variable(spec.variable))
    for (double& v : out) v = std::round(v);
  return out;
}

double evaluate_metric(const cascade::CascadeModel& model, Metric metric,
                       const config::RunConfig& cfg) {
  double v = 0.0;
  switch (metric) {
    case Metric::Op: v = cascade::outage_probability(model, cfg.gamma_th()); break;
    case Metric::Bep: v = cascade::average_bep(model, cfg.modulation, cfg.metric_config()); break;
    case Metric::Capacity: v = cascade::ergodic_capacity(model, cfg.metric_config()); break;
  }
  require(std::isfinite(v), ErrorKind::Numerical,
          std::string(metric_name(metric)) + " evaluated to a non-finite value");
  return v;
}

mc::McEstimate estimate_metric(const cascade::CascadeModel& model, Metric metric,
                               const config::RunConfig& cfg) {
  const auto mcc = cfg.mc_config();
  switch (metric) {
    case Metric::Op: return mc::estimate_op(model, cfg.gamma_th(), mcc);
    case Metric::Bep: return mc::estimate_bep(model, cfg.modulation, mcc);
    case Metric::Capacity: return mc::estimate_capacity(model, mcc);
  }
  fail(ErrorKind::Domain, "unknown metric");
}

std::vector<SweepRow> run_metric(const config::RunConfig& cfg, Metric metric,
                                 const config::SweepSpec& spec, bool with_mc) {
  return run_points(cfg, metric, spec.variable, sweep_grid(spec), with_mc, {});
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<SweepRow>& rows, bool with_scenario) {
  std::string out;
  if (with_scenario) out += "scenario,";
  out += "sweep_var,sweep_value,analytic,mc_mean,mc_stderr,z,pass\n";
  for (const auto& r : rows) {
    if (with_scenario) out += r.scenario + ",";
    out += std::string(config::sweep_variable_name(r.variable)) + ",";
    out += format_number(r.value) + "," + format_number(r.analytic) + ",";
    if (r.mc) {
      out += format_number(r.mc->mc_mean) + "," + format_number(r.mc->mc_stderr) + "," +
             format_number(r.mc->z) + "," + (r.mc->pass ? "true" : "false");
    } else {
      out += ",,,";
    }
    out += "\n";
  }
  return out;
}

FitReport fit_report(const config::RunConfig& cfg) {
  cfg.validate();
  FitReport r;
  const auto fading = cfg.fading();
  r.num_wires = cfg.topology.num_wires;
  r.num_relays = cfg.topology.num_relays;
  r.mu_h = fading.mu_h;
  r.sigma2_h = fading.sigma2_h;
  r.fit = plc::fit_lognormal_sum(cfg.topology, fading, cfg.fit);
  const plc::PlcModel model(cfg.topology, fading, r.fit, cfg.plc_mean_snr());
  r.limiting_cdf = model.limiting_cdf();
  r.samples = cfg.fit.samples;
  r.seed = cfg.fit.seed;
  return r;
}

std::string format_fit_report(const FitReport& r) {
  std::ostringstream out;
  out << "k = " << r.num_wires << "\n"
      << "m = " << r.num_relays << "\n"
      << "mu_h = " << format_number(r.mu_h) << "\n"
      << "sigma2_h = " << format_number(r.sigma2_h) << "\n"
      << "a0 = " << format_number(r.fit.a0) << "\n"
      << "a1 = " << format_number(r.fit.a1) << "\n"
      << "a2 = " << format_number(r.fit.a2) << "\n"
      << "kappa = " << format_number(r.fit.kappa) << "\n"
      << "fit_error = " << format_number(r.fit.fit_error) << "\n"
      << "limiting_cdf = " << format_number(r.limiting_cdf) << "\n"
      << "fit_samples = " << r.samples << "\n"
      << "fit_seed = " << r.seed << "\n";
  return out.str();
}

ValidationResult validate(const config::RunConfig& base) {
  using config::SweepVariable;
  ValidationResult result;
  auto add = [&](std::vector<SweepRow> rows) {
    for (auto& r : rows) {
      result.all_pass = result.all_pass && r.mc && r.mc->pass;
      result.rows.push_back(std::move(r));
    }
  };

  config::RunConfig op = base;
  op.topology.num_wires = 3;
  op.mu_h.reset();
  op.sigma2_h = 1.0;
  op.plc_snr_from_power = false;
  op.plc_mean_snr_db = 10.0;
  op.semiangle_deg = 30.0;
  op.receiver.fov_half_angle = 60.0;
  op.gamma_th_db = 0.0;
  for (const auto& [m, n] : {std::pair{1, 1}, {4, 1}, {1, 4}, {4, 4}}) {
    config::RunConfig c = op;
    c.topology.num_relays = m;
    c.num_leds = n;
    add(run_points(c, Metric::Op, SweepVariable::VlcMeanSnrDb, {20, 35, 50, 65, 80}, true,
                   "fig3_op_m" + std::to_string(m) + "_n" + std::to_string(n)));
  }

  config::RunConfig bep = base;
  bep.topology = {4, 3};
  bep.mu_h.reset();
  bep.sigma2_h = 1.0;
  bep.plc_snr_from_power = false;
  bep.plc_mean_snr_db = 15.0;
  bep.receiver.fov_half_angle = 75.0;
  bep.num_leds = 4;
  for (double phi : {15.0, 60.0}) {
    for (double len : {2.0, 2.5, 3.0}) {
      config::RunConfig c = bep;
      c.semiangle_deg = phi;
      c.geometry.vertical_len = len;
      add(run_points(c, Metric::Bep, SweepVariable::VlcMeanSnrDb, {30, 50, 70}, true,
                     "fig4_bep_phi" + format_number(phi) + "_l" + format_number(len)));
    }
  }

  config::RunConfig cap = base;
  cap.topology = {3, 3};
  cap.mu_h.reset();
  cap.sigma2_h = 1.0;
  cap.plc_snr_from_power = false;
  cap.num_leds = 4;
  cap.receiver.fov_half_angle = 75.0;
  cap.geometry.vertical_len = 2.5;
  cap.vlc_snr_from_power = false;
  cap.vlc_mean_snr_db = 30.0;
  add(run_points(cap, Metric::Capacity, SweepVariable::PlcMeanSnrDb, {0, 20, 40}, true,
                 "fig5_capacity"));
  return result;
}

}  // namespace plcvlc::sweep

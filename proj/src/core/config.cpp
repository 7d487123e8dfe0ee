// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace plcvlc::config {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string v = trim(text);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  require(ec == std::errc() && ptr == v.data() + v.size() && !v.empty(), ErrorKind::Parse,
          std::string(key) + ": expected a number, got '" + v + "'");
  require(std::isfinite(out), ErrorKind::Validation, std::string(key) + " must be finite");
  return out;
}

template <class Int>
Int parse_integer(std::string_view key, std::string_view text) {
  const std::string v = trim(text);
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  require(ec == std::errc() && ptr == v.data() + v.size() && !v.empty(), ErrorKind::Parse,
          std::string(key) + ": expected an integer, got '" + v + "'");
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string v = trim(text);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(ErrorKind::Parse, std::string(key) + ": expected true/false, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

template <class Member>
Setter real(Member member) {
  return [member](RunConfig& c, std::string_view k, std::string_view v) {
    std::invoke(member, c) = parse_double(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"plc.alpha1", real([](RunConfig& c) -> double& { return c.link.alpha1; })},
      {"plc.alpha2", real([](RunConfig& c) -> double& { return c.link.alpha2; })},
      {"plc.k_att", real([](RunConfig& c) -> double& { return c.link.k_att; })},
      {"plc.freq_mhz", real([](RunConfig& c) -> double& { return c.link.freq_mhz; })},
      {"plc.length_m", real([](RunConfig& c) -> double& { return c.link.length_m; })},
      {"plc.tx_power",
       [](RunConfig& c, auto k, auto v) { c.link.tx_power = parse_double(k, v); }},
      {"plc.impulse_prob", real([](RunConfig& c) -> double& { return c.noise.impulse_prob; })},
      {"plc.bg_var", real([](RunConfig& c) -> double& { return c.noise.bg_var; })},
      {"plc.imp_var", real([](RunConfig& c) -> double& { return c.noise.imp_var; })},
      {"plc.m", [](RunConfig& c, auto k, auto v) { c.topology.num_relays = parse_integer<int>(k, v); }},
      {"plc.k", [](RunConfig& c, auto k, auto v) { c.topology.num_wires = parse_integer<int>(k, v); }},
      {"plc.mu_h", [](RunConfig& c, auto k, auto v) { c.mu_h = parse_double(k, v); }},
      {"plc.sigma2_h", real([](RunConfig& c) -> double& { return c.sigma2_h; })},
      {"plc.mean_snr_db",
       [](RunConfig& c, auto k, auto v) { c.plc_mean_snr_db = parse_double(k, v); }},
      {"plc.snr_from_power",
       [](RunConfig& c, auto k, auto v) { c.plc_snr_from_power = parse_bool(k, v); }},
      {"plc.noise_mode",
       [](RunConfig& c, auto k, auto v) {
         const std::string s = trim(v);
         if (s == "folded")
           c.noise_mode = plc::NoiseMode::Folded;
         else if (s == "mixture")
           c.noise_mode = plc::NoiseMode::Mixture;
         else
           fail(ErrorKind::Parse, std::string(k) + ": expected folded|mixture, got '" + s + "'");
       }},
      {"plc.fit_samples",
       [](RunConfig& c, auto k, auto v) { c.fit.samples = parse_integer<std::uint64_t>(k, v); }},
      {"plc.fit_seed",
       [](RunConfig& c, auto k, auto v) { c.fit.seed = parse_integer<std::uint64_t>(k, v); }},
      {"plc.fit_points",
       [](RunConfig& c, auto k, auto v) { c.fit.points = parse_integer<int>(k, v); }},
      {"plc.fit_q_low", real([](RunConfig& c) -> double& { return c.fit.q_low; })},
      {"plc.fit_q_high", real([](RunConfig& c) -> double& { return c.fit.q_high; })},
      {"plc.fit_max_error", real([](RunConfig& c) -> double& { return c.fit.max_error; })},

      {"vlc.n", [](RunConfig& c, auto k, auto v) { c.num_leds = parse_integer<int>(k, v); }},
      {"vlc.vertical_len_m", real([](RunConfig& c) -> double& { return c.geometry.vertical_len; })},
      {"vlc.cell_radius_m", real([](RunConfig& c) -> double& { return c.geometry.cell_radius; })},
      {"vlc.semiangle_deg", real([](RunConfig& c) -> double& { return c.semiangle_deg; })},
      {"vlc.fov_deg", real([](RunConfig& c) -> double& { return c.receiver.fov_half_angle; })},
      {"vlc.pd_area", real([](RunConfig& c) -> double& { return c.receiver.pd_area; })},
      {"vlc.responsivity", real([](RunConfig& c) -> double& { return c.receiver.responsivity; })},
      {"vlc.filter_gain", real([](RunConfig& c) -> double& { return c.receiver.filter_gain; })},
      {"vlc.refr_index", real([](RunConfig& c) -> double& { return c.receiver.refr_index; })},
      {"vlc.rho", real([](RunConfig& c) -> double& { return c.rho; })},
      {"vlc.mean_snr_db",
       [](RunConfig& c, auto k, auto v) { c.vlc_mean_snr_db = parse_double(k, v); }},
      {"vlc.tx_power", [](RunConfig& c, auto k, auto v) { c.vlc_tx_power = parse_double(k, v); }},
      {"vlc.noise_var",
       [](RunConfig& c, auto k, auto v) { c.vlc_noise_var = parse_double(k, v); }},
      {"vlc.snr_from_power",
       [](RunConfig& c, auto k, auto v) { c.vlc_snr_from_power = parse_bool(k, v); }},

      {"cascade.gamma_th_db", real([](RunConfig& c) -> double& { return c.gamma_th_db; })},
      {"cascade.p_mod", real([](RunConfig& c) -> double& { return c.modulation.p_mod; })},
      {"cascade.q_mod", real([](RunConfig& c) -> double& { return c.modulation.q_mod; })},
      {"cascade.quad_order",
       [](RunConfig& c, auto k, auto v) { c.quad_order = parse_integer<int>(k, v); }},
      {"cascade.scheme",
       [](RunConfig& c, auto k, auto v) {
         const std::string s = trim(v);
         if (s == "graded")
           c.scheme = cascade::QuadratureScheme::Graded;
         else if (s == "affine")
           c.scheme = cascade::QuadratureScheme::Affine;
         else
           fail(ErrorKind::Parse, std::string(k) + ": expected graded|affine, got '" + s + "'");
       }},

      {"mc.trials",
       [](RunConfig& c, auto k, auto v) { c.mc.trials = parse_integer<std::uint64_t>(k, v); }},
      {"mc.seed",
       [](RunConfig& c, auto k, auto v) { c.mc.seed = parse_integer<std::uint64_t>(k, v); }},
      {"mc.batch_size",
       [](RunConfig& c, auto k, auto v) {
         c.mc.batch_size = parse_integer<std::uint64_t>(k, v);
         c.mc_batch_explicit = true;
       }},
      {"mc.streams", [](RunConfig& c, auto k, auto v) { c.mc.streams = parse_integer<int>(k, v); }},
      {"mc.z_threshold", real([](RunConfig& c) -> double& { return c.z_threshold; })},

      {"sweep.spec", [](RunConfig& c, auto, auto v) { c.sweep = parse_sweep(trim(v)); }},
  };
  return table;
}

constexpr std::pair<SweepVariable, std::string_view> kSweepNames[] = {
    {SweepVariable::VlcMeanSnrDb, "vlc_mean_snr_db"},
    {SweepVariable::PlcMeanSnrDb, "plc_mean_snr_db"},
    {SweepVariable::NumRelays, "num_relays"},
    {SweepVariable::NumLeds, "num_leds"},
    {SweepVariable::NumWires, "num_wires"},
    {SweepVariable::SemiangleDeg, "semiangle_deg"},
    {SweepVariable::FovDeg, "fov_deg"},
    {SweepVariable::VerticalLenM, "vertical_len_m"},
};

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string_view sweep_variable_name(SweepVariable v) {
  for (const auto& [var, name] : kSweepNames)
    if (var == v) return name;
  return "unknown";
}

bool is_integer_variable(SweepVariable v) {
  return v == SweepVariable::NumRelays || v == SweepVariable::NumLeds ||
         v == SweepVariable::NumWires;
}

void SweepSpec::validate() const {
  require(start < stop, ErrorKind::Validation, "sweep: start must be < stop");
  require(points >= 2, ErrorKind::Validation, "sweep: need at least 2 points");
  if (scale == SweepScale::Log)
    require(start > 0.0, ErrorKind::Validation, "sweep: log scale needs start > 0");
  if (is_integer_variable(variable) && scale == SweepScale::Linear) {
    const double step = (stop - start) / (points - 1);
    require(std::abs(start - std::round(start)) < 1e-9 && std::abs(step - std::round(step)) < 1e-9,
            ErrorKind::Validation,
            "sweep: " + std::string(sweep_variable_name(variable)) +
                " is an integer variable and needs an integer grid");
  }
  require(!(is_integer_variable(variable) && scale == SweepScale::Log), ErrorKind::Validation,
          "sweep: integer variables cannot use a log grid");
}

SweepSpec parse_sweep(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(trim(cur));
  require(parts.size() == 4 || parts.size() == 5, ErrorKind::Parse,
          "sweep: expected var:start:stop:points[:log], got '" + std::string(text) + "'");
  SweepSpec spec;
  bool found = false;
  for (const auto& [var, name] : kSweepNames) {
    if (parts[0] == name) {
      spec.variable = var;
      found = true;
    }
  }
  require(found, ErrorKind::Parse, "sweep: unknown variable '" + parts[0] + "'");
  spec.start = parse_double("sweep.start", parts[1]);
  spec.stop = parse_double("sweep.stop", parts[2]);
  spec.points = parse_integer<int>("sweep.points", parts[3]);
  if (parts.size() == 5) {
    if (parts[4] == "log")
      spec.scale = SweepScale::Log;
    else if (parts[4] == "linear")
      spec.scale = SweepScale::Linear;
    else
      fail(ErrorKind::Parse, "sweep: scale must be log or linear, got '" + parts[4] + "'");
  }
  spec.validate();
  return spec;
}

plc::LognormalFading RunConfig::fading() const {
  if (mu_h) return {*mu_h, sigma2_h};
  return plc::normalize_fading(topology.num_wires, sigma2_h);
}

double RunConfig::plc_mean_snr() const {
  if (plc_snr_from_power) return plc::mean_branch_snr(link, noise);
  return db_to_linear(plc_mean_snr_db.value_or(kDefaultPlcMeanSnrDb));
}

double RunConfig::vlc_mean_snr() const {
  if (vlc_snr_from_power) return *vlc_tx_power * rho / *vlc_noise_var;
  return db_to_linear(vlc_mean_snr_db.value_or(kDefaultVlcMeanSnrDb));
}

double RunConfig::gamma_th() const { return db_to_linear(gamma_th_db); }

cascade::MetricConfig RunConfig::metric_config() const {
  return {quad_order, gamma_th(), scheme};
}

mc::McConfig RunConfig::mc_config() const {
  mc::McConfig out = mc;
  if (!mc_batch_explicit) out.batch_size = std::min(out.batch_size, out.trials);
  out.noise_mode = noise_mode;
  out.noise = noise;
  return out;
}

void RunConfig::validate() const {
  link.validate();
  noise.validate();
  topology.validate();
  require(sigma2_h > 0.0, ErrorKind::Validation, "plc.sigma2_h must be > 0");
  fit.validate();
  if (plc_snr_from_power) {
    require(!plc_mean_snr_db.has_value(), ErrorKind::Conflict,
            "plc.mean_snr_db conflicts with plc.snr_from_power = true");
    require(link.tx_power.has_value(), ErrorKind::Validation,
            "plc.snr_from_power = true requires plc.tx_power");
  }
  geometry.validate();
  receiver.validate();
  require(semiangle_deg > 0.0 && semiangle_deg < 90.0, ErrorKind::Validation,
          "vlc.semiangle_deg must lie in (0, 90), got " + std::to_string(semiangle_deg));
  require(num_leds >= 1 && num_leds <= 16, ErrorKind::Validation,
          "vlc.n must lie in [1, 16], got " + std::to_string(num_leds));
  require(rho > 0.0, ErrorKind::Validation, "vlc.rho must be > 0");
  if (vlc_snr_from_power) {
    require(!vlc_mean_snr_db.has_value(), ErrorKind::Conflict,
            "vlc.mean_snr_db conflicts with vlc.snr_from_power = true");
    require(vlc_tx_power.has_value() && vlc_noise_var.has_value(), ErrorKind::Validation,
            "vlc.snr_from_power = true requires vlc.tx_power and vlc.noise_var");
    require(*vlc_tx_power > 0.0 && *vlc_noise_var > 0.0, ErrorKind::Validation,
            "vlc.tx_power and vlc.noise_var must be > 0");
  }
  modulation.validate();
  metric_config().validate();
  mc_config().validate();
  require(z_threshold > 0.0, ErrorKind::Validation, "mc.z_threshold must be > 0");
  if (sweep) sweep->validate();
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  const auto& table = setters();
  const auto it = table.find(key);
  require(it != table.end(), ErrorKind::Validation, "unknown config key '" + std::string(key) + "'");
  it->second(cfg, key, value);
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    require(eq != std::string::npos, ErrorKind::Parse,
            "line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    require(!key.empty() && !value.empty(), ErrorKind::Parse,
            "line " + std::to_string(lineno) + ": empty key or value");
    require(seen.insert(key).second, ErrorKind::Parse,
            "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    apply_setting(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void apply_sweep_value(RunConfig& cfg, SweepVariable var, double value) {
  const int as_int = static_cast<int>(std::lround(value));
  switch (var) {
    case SweepVariable::VlcMeanSnrDb:
      cfg.vlc_mean_snr_db = value;
      cfg.vlc_snr_from_power = false;
      break;
    case SweepVariable::PlcMeanSnrDb:
      cfg.plc_mean_snr_db = value;
      cfg.plc_snr_from_power = false;
      break;
    case SweepVariable::NumRelays: cfg.topology.num_relays = as_int; break;
    case SweepVariable::NumLeds: cfg.num_leds = as_int; break;
    case SweepVariable::NumWires: cfg.topology.num_wires = as_int; break;
    case SweepVariable::SemiangleDeg: cfg.semiangle_deg = value; break;
    case SweepVariable::FovDeg: cfg.receiver.fov_half_angle = value; break;
    case SweepVariable::VerticalLenM: cfg.geometry.vertical_len = value; break;
  }
}

cascade::CascadeModel build_model(const RunConfig& cfg) {
  cfg.validate();
  const plc::LognormalFading fading = cfg.fading();
  const plc::LognormalSumFit fit = plc::fit_lognormal_sum(cfg.topology, fading, cfg.fit);
  plc::PlcModel plc_model(cfg.topology, fading, fit, cfg.plc_mean_snr());
  auto vlc_model = vlc::VlcModel::from_receiver(cfg.geometry, cfg.receiver, cfg.semiangle_deg,
                                                cfg.vlc_mean_snr(), cfg.num_leds);
  return {std::move(plc_model), std::move(vlc_model)};
}

}  // namespace plcvlc::config

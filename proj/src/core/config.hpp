// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Run configuration: a flat `section.key = value` text format. Every key is
// optional; omitted keys take the defaults below. dB inputs
// are converted to linear scale once, when a model is built.

#include <optional>
#include <string>
#include <string_view>

#include "cascade.hpp"
#include "mc.hpp"
#include "plc.hpp"
#include "vlc.hpp"

namespace plcvlc::config {

enum class SweepVariable {
  VlcMeanSnrDb,
  PlcMeanSnrDb,
  NumRelays,
  NumLeds,
  NumWires,
  SemiangleDeg,
  FovDeg,
  VerticalLenM,
};

enum class SweepScale { Linear, Log };

struct SweepSpec {
  SweepVariable variable = SweepVariable::VlcMeanSnrDb;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  SweepScale scale = SweepScale::Linear;

  void validate() const;
};

std::string_view sweep_variable_name(SweepVariable v);
bool is_integer_variable(SweepVariable v);

/// "var:start:stop:points[:log|:linear]".
SweepSpec parse_sweep(std::string_view text);

struct RunConfig {
  // PLC hop
  plc::PlcLinkParams link;
  plc::PlcNoise noise;
  plc::PlcTopology topology{1, 3};
  double sigma2_h = 1.0;
  std::optional<double> mu_h;  // derived from K when unset
  std::optional<double> plc_mean_snr_db;
  bool plc_snr_from_power = false;
  plc::NoiseMode noise_mode = plc::NoiseMode::Folded;
  plc::FitConfig fit;

  // VLC hop
  vlc::VlcGeometry geometry;
  vlc::ReceiverParams receiver;
  double semiangle_deg = 60.0;
  int num_leds = 1;
  double rho = 0.64;  // A/W, enters only the power path of the mean SNR
  std::optional<double> vlc_mean_snr_db;
  std::optional<double> vlc_tx_power;
  std::optional<double> vlc_noise_var;
  bool vlc_snr_from_power = false;

  // Metrics
  double gamma_th_db = 0.0;
  cascade::ModulationParams modulation;
  int quad_order = 64;
  cascade::QuadratureScheme scheme = cascade::QuadratureScheme::Graded;

  // Monte Carlo
  mc::McConfig mc;
  bool mc_batch_explicit = false;
  double z_threshold = 3.0;

  std::optional<SweepSpec> sweep;

  static constexpr double kDefaultPlcMeanSnrDb = 10.0;
  static constexpr double kDefaultVlcMeanSnrDb = 100.0;

  plc::LognormalFading fading() const;
  double plc_mean_snr() const;  // linear
  double vlc_mean_snr() const;  // linear
  double gamma_th() const;      // linear
  cascade::MetricConfig metric_config() const;
  mc::McConfig mc_config() const;

  /// Re-checks every invariant; throws Validation or Conflict errors.
  void validate() const;
};

double db_to_linear(double db);

/// Applies one `key = value` setting. Unknown keys are a validation error.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Sets a sweep variable to a grid value (integers are rounded).
void apply_sweep_value(RunConfig& cfg, SweepVariable var, double value);

/// Full model, including the (memoized) lognormal-sum fit.
cascade::CascadeModel build_model(const RunConfig& cfg);

}  // namespace plcvlc::config

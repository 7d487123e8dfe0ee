// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Monte Carlo oracle. Draws the end-to-end SNR from the physical model
// (lognormal wires, uniform-disk users) with no distributional shortcuts,
// so it checks both the lognormal-sum fit and the closed forms.

#include <cstdint>
#include <functional>

#include "cascade.hpp"
#include "rng.hpp"

namespace plcvlc::mc {

struct McConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 20250401;
  std::uint64_t batch_size = 65'536;
  int streams = 16;
  plc::NoiseMode noise_mode = plc::NoiseMode::Folded;
  plc::PlcNoise noise{};  // only read in Mixture mode

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
};

struct AgreementRecord {
  double analytic = 0.0;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  double z = 0.0;
  bool pass = false;
};

double sample_end_to_end_snr(RngStream& rng, const cascade::CascadeModel& model);

/// Mean of g(gamma_eq) over cfg.trials draws. Trials are split across
/// cfg.streams independent streams and the per-stream sums are combined in
/// stream order, so the result does not depend on thread scheduling.
McEstimate estimate_mean(const cascade::CascadeModel& model, const McConfig& cfg,
                         const std::function<double(double)>& g);

McEstimate estimate_op(const cascade::CascadeModel& model, double gamma_th, const McConfig& cfg);
McEstimate estimate_bep(const cascade::CascadeModel& model, const cascade::ModulationParams& mod,
                        const McConfig& cfg);
McEstimate estimate_capacity(const cascade::CascadeModel& model, const McConfig& cfg);

/// z = (analytic - mean) / std_error; pass iff |z| < z_threshold. A zero
/// standard error (every draw identical) passes only on near-equality.
AgreementRecord compare_report(double analytic, const McEstimate& mc, double z_threshold = 3.0);

}  // namespace plcvlc::mc

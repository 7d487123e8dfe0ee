// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Multiwire PLC hop: cable attenuation, noise mixture, lognormal fading,
// MRC over K wires per relay, best-of-M relay selection, and the fitted
// lognormal-sum CDF family Phi(a0 - a1 x^(-a2/kappa)).

#include <cmath>
#include <cstdint>
#include <optional>

#include "rng.hpp"

namespace plcvlc::plc {

inline const double kKappa = std::log(10.0) / 10.0;

struct PlcLinkParams {
  double alpha1 = 0.0093;  // 1/m
  double alpha2 = 0.0051;  // 1/m per MHz^k_att
  double k_att = 1.0;
  double freq_mhz = 20.0;
  double length_m = 5.0;
  std::optional<double> tx_power;  // W

  void validate() const;
};

struct PlcNoise {
  double impulse_prob = 0.05;
  double bg_var = 1.0;
  double imp_var = 10.0;

  void validate() const;
};

struct LognormalFading {
  double mu_h = 0.0;
  double sigma2_h = 1.0;

  double sigma_h() const { return std::sqrt(sigma2_h); }
  void validate() const;
};

struct PlcTopology {
  int num_relays = 1;  // M
  int num_wires = 3;   // K

  void validate() const;
};

struct FitConfig {
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 0x5eed0f17ULL;
  int points = 512;
  double q_low = 0.001;
  double q_high = 0.999;
  double max_error = 0.01;

  void validate() const;
};

struct LognormalSumFit {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double kappa = kKappa;
  double fit_error = 0.0;  // max |CDF deviation| over the fitted quantiles

  /// Fitted CDF of the normalized sum S = sum_k h_k^2 at x > 0.
  double sum_cdf(double x) const;
};

enum class NoiseMode { Folded, Mixture };

/// exp(-2 (alpha1 + alpha2 f^k_att) l).
double cable_attenuation(const PlcLinkParams& link);

/// sigma_g^2 + p sigma_i^2.
double effective_noise_power(const PlcNoise& noise);

/// P_PLC beta_PLC / sigma_PLC^2. Requires link.tx_power.
double mean_branch_snr(const PlcLinkParams& link, const PlcNoise& noise);

/// Log-mean that makes E{h^2} = 1/K for the given log-variance.
LognormalFading normalize_fading(int num_wires, double sigma2_h);

/// Fit (a0, a1, a2) to the distribution of S = sum of K i.i.d. h^2.
/// Results are memoized per (K, fading, config); repeated calls are cheap.
LognormalSumFit fit_lognormal_sum(const PlcTopology& topology, const LognormalFading& fading,
                                  const FitConfig& config = {});

class PlcModel {
 public:
  PlcModel(PlcTopology topology, LognormalFading fading, LognormalSumFit fit,
           double mean_branch_snr);

  const PlcTopology& topology() const { return topology_; }
  const LognormalFading& fading() const { return fading_; }
  const LognormalSumFit& fit() const { return fit_; }
  double mean_branch_snr() const { return mean_snr_; }

  /// Argument a0 - a1 (gamma / mean)^(-a2/kappa) of Phi; -inf as gamma -> 0.
  double phi_argument(double gamma) const;

  double cdf(double gamma) const;
  double pdf(double gamma) const;

  /// Phi(a0)^M, the value the approximate CDF tends to as gamma -> inf.
  double limiting_cdf() const;

  /// Smallest gamma below which the CDF is under `level` (used to truncate
  /// integrals that start at zero).
  double lower_tail_point(double level = 1e-300) const;

 private:
  PlcTopology topology_;
  LognormalFading fading_;
  LognormalSumFit fit_;
  double mean_snr_;
  double log_a1_;
  double slope_;  // a2 / kappa
};

double plc_snr_cdf(double gamma, const PlcModel& model);
double plc_snr_pdf(double gamma, const PlcModel& model);

/// One exact draw of the best-of-M MRC output SNR.
double sample_plc_snr(RngStream& rng, const PlcTopology& topology,
                      const LognormalFading& fading, double mean_branch_snr);

/// Per-draw impulsive noise state instead of the folded variance: each
/// relay sees background-only noise with probability 1 - p. The mean SNR
/// passed in is the folded one, P beta / sigma_PLC^2.
double sample_plc_snr_mixture(RngStream& rng, const PlcTopology& topology,
                              const LognormalFading& fading, double mean_branch_snr,
                              const PlcNoise& noise);

}  // namespace plcvlc::plc

// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "plc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "nelder_mead.hpp"
#include "parallel.hpp"
#include "specfun.hpp"

namespace plcvlc::plc {

using specfun::log_std_normal_cdf;
using specfun::std_normal_cdf;

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr int kFitStreams = 16;

std::string num(double v) { return std::to_string(v); }

// Reference points of the fit: sorted values of S at the chosen quantiles
// and the CDF value each should map to.
struct Reference {
  std::vector<double> log_x;
  std::vector<double> target;
};

std::vector<double> quantile_grid(const FitConfig& cfg) {
  std::vector<double> q(cfg.points);
  for (int j = 0; j < cfg.points; ++j)
    q[j] = cfg.q_low + (cfg.q_high - cfg.q_low) * j / (cfg.points - 1);
  return q;
}

Reference exact_single_term_reference(const LognormalFading& fading, const FitConfig& cfg) {
  // K = 1: S = h^2 is lognormal with log-mean 2 mu_h and log-sd 2 sigma_h.
  Reference ref;
  for (double q : quantile_grid(cfg)) {
    ref.log_x.push_back(2.0 * fading.mu_h + 2.0 * fading.sigma_h() * specfun::std_normal_quantile(q));
    ref.target.push_back(q);
  }
  return ref;
}

Reference sampled_reference(int num_wires, const LognormalFading& fading, const FitConfig& cfg) {
  const std::uint64_t n = cfg.samples;
  std::vector<double> sums(n);
  const double mu = fading.mu_h;
  const double sigma = fading.sigma_h();
  detail::parallel_for(kFitStreams, [&](int stream) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(stream));
    const std::uint64_t begin = n * stream / kFitStreams;
    const std::uint64_t end = n * (stream + 1) / kFitStreams;
    for (std::uint64_t i = begin; i < end; ++i) {
      double s = 0.0;
      for (int k = 0; k < num_wires; ++k) s += std::exp(2.0 * (mu + sigma * rng.normal()));
      sums[i] = s;
    }
  });
  std::sort(sums.begin(), sums.end());

  Reference ref;
  for (double q : quantile_grid(cfg)) {
    const auto idx = std::min<std::uint64_t>(n - 1, static_cast<std::uint64_t>(q * n));
    ref.log_x.push_back(std::log(sums[idx]));
    ref.target.push_back(static_cast<double>(idx + 1) / n);
  }
  return ref;
}

// Parameterization used by the optimizer: value z0 and slope g of the Phi
// argument at the reference log-median m, and log of the decay c = a2/kappa.
// It is well conditioned even when c -> 0 and a0, a1 grow without bound.
struct Shape {
  double z0;
  double log_g;
  double log_c;
};

constexpr double kMinLogC = -18.0;
constexpr double kMaxLogC = 3.0;

double shape_argument(const Shape& s, double center, double log_x) {
  const double c = std::exp(std::clamp(s.log_c, kMinLogC, kMaxLogC));
  const double g = std::exp(s.log_g);
  return s.z0 - (g / c) * std::expm1(-c * (log_x - center));
}

LognormalSumFit to_constants(const Shape& s, double center) {
  const double c = std::exp(std::clamp(s.log_c, kMinLogC, kMaxLogC));
  const double g = std::exp(s.log_g);
  LognormalSumFit fit;
  fit.a0 = s.z0 + g / c;
  fit.a1 = (g / c) * std::exp(c * center);
  fit.a2 = c * kKappa;
  return fit;
}

double max_deviation(const LognormalSumFit& fit, const Reference& ref) {
  double worst = 0.0;
  for (std::size_t j = 0; j < ref.log_x.size(); ++j)
    worst = std::max(worst, std::abs(fit.sum_cdf(std::exp(ref.log_x[j])) - ref.target[j]));
  return worst;
}

LognormalSumFit fit_to_reference(const Reference& ref) {
  const auto& t = ref.log_x;
  const std::size_t n = t.size();
  auto log_x_at = [&](double q) {
    const auto it = std::lower_bound(ref.target.begin(), ref.target.end(), q);
    return t[std::min<std::size_t>(n - 1, static_cast<std::size_t>(it - ref.target.begin()))];
  };
  const double center = log_x_at(0.5);
  const double spread = std::max(1e-6, 0.5 * (log_x_at(0.841344746) - log_x_at(0.158655254)));

  auto objective = [&](const std::array<double, 3>& p) {
    const Shape s{p[0], p[1], p[2]};
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(std_normal_cdf(shape_argument(s, center, t[j])) - ref.target[j]));
    return worst;
  };

  detail::SimplexResult<3> best;
  best.value = std::numeric_limits<double>::infinity();
  for (double log_c0 : {-8.0, -4.0, -2.0, -1.0, 0.0}) {
    std::array<double, 3> x{0.0, -std::log(spread), log_c0};
    detail::SimplexResult<3> r;
    for (int restart = 0; restart < 3; ++restart) {
      r = detail::nelder_mead<3>(objective, x, {0.05, 0.1, 0.5}, 3000);
      x = r.x;
    }
    if (r.value < best.value) best = r;
  }

  LognormalSumFit fit = to_constants({best.x[0], best.x[1], best.x[2]}, center);
  fit.fit_error = max_deviation(fit, ref);
  return fit;
}

using FitKey = std::tuple<int, double, double, std::uint64_t, std::uint64_t, int, double, double>;

}  // namespace

void PlcLinkParams::validate() const {
  require(alpha1 >= 0.0, ErrorKind::Validation, "plc.alpha1 must be >= 0, got " + num(alpha1));
  require(alpha2 >= 0.0, ErrorKind::Validation, "plc.alpha2 must be >= 0, got " + num(alpha2));
  require(freq_mhz > 0.0, ErrorKind::Validation, "plc.freq_mhz must be > 0, got " + num(freq_mhz));
  require(length_m > 0.0, ErrorKind::Validation, "plc.length_m must be > 0, got " + num(length_m));
  require(k_att > 0.0, ErrorKind::Validation, "plc.k_att must be > 0, got " + num(k_att));
  if (tx_power)
    require(*tx_power > 0.0, ErrorKind::Validation, "plc.tx_power must be > 0, got " + num(*tx_power));
}

void PlcNoise::validate() const {
  require(impulse_prob >= 0.0 && impulse_prob <= 1.0, ErrorKind::Validation,
          "plc.impulse_prob must lie in [0, 1], got " + num(impulse_prob));
  require(bg_var > 0.0, ErrorKind::Validation, "plc.bg_var must be > 0, got " + num(bg_var));
  require(imp_var >= 0.0, ErrorKind::Validation, "plc.imp_var must be >= 0, got " + num(imp_var));
}

void LognormalFading::validate() const {
  require(std::isfinite(mu_h), ErrorKind::Validation, "plc.mu_h must be finite");
  require(sigma2_h > 0.0 && std::isfinite(sigma2_h), ErrorKind::Validation,
          "plc.sigma2_h must be > 0, got " + num(sigma2_h));
}

void PlcTopology::validate() const {
  require(num_relays >= 1 && num_relays <= 16, ErrorKind::Validation,
          "plc.m (relays) must lie in [1, 16], got " + std::to_string(num_relays));
  require(num_wires >= 1 && num_wires <= 16, ErrorKind::Validation,
          "plc.k (wires) must lie in [1, 16], got " + std::to_string(num_wires));
}

void FitConfig::validate() const {
  require(samples >= 1000, ErrorKind::Validation, "plc.fit_samples must be >= 1000");
  require(points >= 8, ErrorKind::Validation, "plc.fit_points must be >= 8");
  require(q_low > 0.0 && q_low < q_high && q_high < 1.0, ErrorKind::Validation,
          "plc.fit_q_low/plc.fit_q_high must satisfy 0 < low < high < 1");
  require(max_error > 0.0, ErrorKind::Validation, "fit max_error must be > 0");
}

double LognormalSumFit::sum_cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  const double e = std::log(a1) - (a2 / kappa) * std::log(x);
  if (e > 700.0) return 0.0;
  return std_normal_cdf(a0 - std::exp(e));
}

double cable_attenuation(const PlcLinkParams& link) {
  link.validate();
  return std::exp(-2.0 * (link.alpha1 + link.alpha2 * std::pow(link.freq_mhz, link.k_att)) *
                  link.length_m);
}

double effective_noise_power(const PlcNoise& noise) {
  noise.validate();
  return (1.0 - noise.impulse_prob) * noise.bg_var +
         noise.impulse_prob * (noise.bg_var + noise.imp_var);
}

double mean_branch_snr(const PlcLinkParams& link, const PlcNoise& noise) {
  require(link.tx_power.has_value(), ErrorKind::Validation,
          "plc.tx_power is required to derive the mean branch SNR");
  return *link.tx_power * cable_attenuation(link) / effective_noise_power(noise);
}

LognormalFading normalize_fading(int num_wires, double sigma2_h) {
  require(num_wires >= 1, ErrorKind::Domain, "normalize_fading: K must be >= 1");
  require(sigma2_h > 0.0, ErrorKind::Domain, "normalize_fading: sigma2_h must be > 0");
  return {-0.5 * std::log(static_cast<double>(num_wires)) - sigma2_h, sigma2_h};
}

LognormalSumFit fit_lognormal_sum(const PlcTopology& topology, const LognormalFading& fading,
                                  const FitConfig& config) {
  topology.validate();
  fading.validate();
  config.validate();

  static std::mutex mutex;
  static std::map<FitKey, LognormalSumFit> cache;
  const FitKey key{topology.num_wires, fading.mu_h, fading.sigma2_h, config.samples,
                   config.seed,        config.points, config.q_low, config.q_high};
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) {
      require(it->second.fit_error < config.max_error, ErrorKind::FitFailure,
              "lognormal-sum fit error " + num(it->second.fit_error) + " exceeds " +
                  num(config.max_error));
      return it->second;
    }
  }

  const Reference ref = (topology.num_wires == 1)
                            ? exact_single_term_reference(fading, config)
                            : sampled_reference(topology.num_wires, fading, config);
  const LognormalSumFit fit = fit_to_reference(ref);
  {
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, fit);
  }
  require(fit.a1 > 0.0 && fit.a2 > 0.0 && std::isfinite(fit.a0), ErrorKind::FitFailure,
          "lognormal-sum fit produced non-positive a1/a2");
  require(fit.fit_error < config.max_error, ErrorKind::FitFailure,
          "lognormal-sum fit error " + num(fit.fit_error) + " exceeds " + num(config.max_error) +
              " for K = " + std::to_string(topology.num_wires));
  return fit;
}

PlcModel::PlcModel(PlcTopology topology, LognormalFading fading, LognormalSumFit fit,
                   double mean_branch_snr)
    : topology_(topology), fading_(fading), fit_(fit), mean_snr_(mean_branch_snr) {
  topology_.validate();
  fading_.validate();
  require(fit_.a1 > 0.0 && fit_.a2 > 0.0, ErrorKind::Validation,
          "lognormal-sum constants a1 and a2 must be positive");
  require(mean_snr_ > 0.0 && std::isfinite(mean_snr_), ErrorKind::Validation,
          "mean branch SNR must be positive and finite");
  log_a1_ = std::log(fit_.a1);
  slope_ = fit_.a2 / fit_.kappa;
}

double PlcModel::phi_argument(double gamma) const {
  if (!(gamma > 0.0)) return -std::numeric_limits<double>::infinity();
  const double e = log_a1_ - slope_ * std::log(gamma / mean_snr_);
  if (e > 700.0) return -std::numeric_limits<double>::infinity();
  return fit_.a0 - std::exp(e);
}

double PlcModel::cdf(double gamma) const {
  const double arg = phi_argument(gamma);
  if (std::isinf(arg)) return 0.0;
  const int m = topology_.num_relays;
  const double value = (m == 1) ? std_normal_cdf(arg) : std::exp(m * log_std_normal_cdf(arg));
  return std::clamp(value, 0.0, 1.0);
}

double PlcModel::pdf(double gamma) const {
  if (!(gamma > 0.0)) return 0.0;
  const double e = log_a1_ - slope_ * std::log(gamma / mean_snr_);
  if (e > 700.0) return 0.0;
  const double arg = fit_.a0 - std::exp(e);
  const int m = topology_.num_relays;
  // M (a2/kappa) w / gamma * phi(arg) * Phi(arg)^(M-1), w = a1 (gamma/mean)^(-a2/kappa).
  double log_pdf = std::log(m * slope_) + e - std::log(gamma) - 0.5 * arg * arg - kLogSqrt2Pi;
  if (m > 1) log_pdf += (m - 1) * log_std_normal_cdf(arg);
  return std::exp(log_pdf);
}

double PlcModel::limiting_cdf() const {
  return std::pow(std_normal_cdf(fit_.a0), topology_.num_relays);
}

double PlcModel::lower_tail_point(double level) const {
  const double per_relay = std::pow(level, 1.0 / topology_.num_relays);
  const double arg = specfun::std_normal_quantile(per_relay);
  // a0 - a1 x^(-slope) = arg  =>  ln x = -(ln(a0 - arg) - ln a1) / slope.
  const double log_x = -(std::log(fit_.a0 - arg) - log_a1_) / slope_;
  return mean_snr_ * std::exp(log_x);
}

double plc_snr_cdf(double gamma, const PlcModel& model) { return model.cdf(gamma); }

double plc_snr_pdf(double gamma, const PlcModel& model) { return model.pdf(gamma); }

double sample_plc_snr(RngStream& rng, const PlcTopology& topology, const LognormalFading& fading,
                      double mean_branch_snr) {
  const double sigma = fading.sigma_h();
  double best = 0.0;
  for (int m = 0; m < topology.num_relays; ++m) {
    double s = 0.0;
    for (int k = 0; k < topology.num_wires; ++k)
      s += std::exp(2.0 * (fading.mu_h + sigma * rng.normal()));
    best = std::max(best, s);
  }
  return mean_branch_snr * best;
}

double sample_plc_snr_mixture(RngStream& rng, const PlcTopology& topology,
                              const LognormalFading& fading, double mean_branch_snr,
                              const PlcNoise& noise) {
  const double folded = effective_noise_power(noise);
  const double sigma = fading.sigma_h();
  double best = 0.0;
  for (int m = 0; m < topology.num_relays; ++m) {
    const bool impulsive = rng.uniform() < noise.impulse_prob;
    const double var = impulsive ? noise.bg_var + noise.imp_var : noise.bg_var;
    double s = 0.0;
    for (int k = 0; k < topology.num_wires; ++k)
      s += std::exp(2.0 * (fading.mu_h + sigma * rng.normal()));
    best = std::max(best, s * folded / var);
  }
  return mean_branch_snr * best;
}

}  // namespace plcvlc::plc

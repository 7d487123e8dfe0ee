// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "specfun.hpp"

namespace plcvlc::mc {

namespace {

// Running count, mean and centered sum of squares; merged with Chan's
// pairwise update so near-constant samples keep their variance.
struct Partial {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    count += 1.0;
    const double delta = v - mean;
    mean += delta / count;
    m2 += delta * (v - mean);
  }

  void merge(const Partial& o) {
    if (o.count == 0.0) return;
    const double n = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * o.count / n;
    m2 += o.m2 + delta * delta * count * o.count / n;
    count = n;
  }
};

// Exact-equality tolerance used when every draw gave the same value.
constexpr double kDegenerateTol = 1e-9;

template <class Draw>
std::vector<Partial> run_streams(const McConfig& cfg, Draw&& draw) {
  std::vector<Partial> partials(cfg.streams);
  detail::parallel_for(cfg.streams, [&](int s) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(s));
    const std::uint64_t begin = cfg.trials * s / cfg.streams;
    const std::uint64_t end = cfg.trials * (s + 1) / cfg.streams;
    Partial total;
    for (std::uint64_t b = begin; b < end; b += cfg.batch_size) {
      const std::uint64_t stop = std::min(end, b + cfg.batch_size);
      Partial batch;
      for (std::uint64_t i = b; i < stop; ++i) batch.add(draw(rng));
      total.merge(batch);
    }
    partials[s] = total;
  });
  return partials;
}

McEstimate finish(const std::vector<Partial>& partials, std::uint64_t n, bool binomial) {
  Partial all;
  for (const auto& p : partials) all.merge(p);
  const double dn = static_cast<double>(n);
  McEstimate est;
  est.trials = n;
  est.mean = all.mean;
  if (binomial) {
    const double p = std::clamp(est.mean, 0.0, 1.0);
    est.std_error = std::sqrt(p * (1.0 - p) / dn);
  } else {
    const double var = all.m2 / (dn - 1.0);
    est.std_error = std::sqrt(var / dn);
  }
  est.ci95_low = est.mean - 1.96 * est.std_error;
  est.ci95_high = est.mean + 1.96 * est.std_error;
  return est;
}

template <class Map>
McEstimate estimate(const cascade::CascadeModel& model, const McConfig& cfg, Map&& map,
                    bool binomial) {
  cfg.validate();
  const auto& plc = model.plc;
  auto draw = [&](RngStream& rng) {
    const double p = (cfg.noise_mode == plc::NoiseMode::Folded)
                         ? plc::sample_plc_snr(rng, plc.topology(), plc.fading(), plc.mean_branch_snr())
                         : plc::sample_plc_snr_mixture(rng, plc.topology(), plc.fading(),
                                                       plc.mean_branch_snr(), cfg.noise);
    const double v = vlc::sample_vlc_snr(rng, model.vlc);
    return map(std::min(p, v));
  };
  return finish(run_streams(cfg, draw), cfg.trials, binomial);
}

}  // namespace

void McConfig::validate() const {
  require(trials >= 1000, ErrorKind::Validation, "mc.trials must be >= 1000");
  require(batch_size >= 1 && batch_size <= trials, ErrorKind::Validation,
          "mc.batch_size must lie in [1, trials]");
  require(streams >= 1 && static_cast<std::uint64_t>(streams) <= trials, ErrorKind::Validation,
          "mc.streams must lie in [1, trials]");
}

double sample_end_to_end_snr(RngStream& rng, const cascade::CascadeModel& model) {
  const auto& plc = model.plc;
  const double p = plc::sample_plc_snr(rng, plc.topology(), plc.fading(), plc.mean_branch_snr());
  const double v = vlc::sample_vlc_snr(rng, model.vlc);
  return std::min(p, v);
}

McEstimate estimate_mean(const cascade::CascadeModel& model, const McConfig& cfg,
                         const std::function<double(double)>& g) {
  return estimate(model, cfg, g, false);
}

McEstimate estimate_op(const cascade::CascadeModel& model, double gamma_th, const McConfig& cfg) {
  require(gamma_th > 0.0, ErrorKind::Domain, "outage threshold must be positive");
  return estimate(model, cfg, [gamma_th](double g) { return g < gamma_th ? 1.0 : 0.0; }, true);
}

McEstimate estimate_bep(const cascade::CascadeModel& model, const cascade::ModulationParams& mod,
                        const McConfig& cfg) {
  mod.validate();
  const double p = mod.p_mod;
  const double q = mod.q_mod;
  return estimate(model, cfg, [p, q](double g) { return 0.5 * specfun::gamma_q(p, q * g); },
                  false);
}

McEstimate estimate_capacity(const cascade::CascadeModel& model, const McConfig& cfg) {
  return estimate(model, cfg, [](double g) { return std::log2(1.0 + g); }, false);
}

AgreementRecord compare_report(double analytic, const McEstimate& mc, double z_threshold) {
  AgreementRecord r;
  r.analytic = analytic;
  r.mc_mean = mc.mean;
  r.mc_stderr = mc.std_error;
  r.abs_dev = std::abs(analytic - mc.mean);
  r.rel_dev = (mc.mean != 0.0) ? r.abs_dev / std::abs(mc.mean)
                               : (r.abs_dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  if (mc.std_error > 0.0) {
    r.z = (analytic - mc.mean) / mc.std_error;
    r.pass = std::abs(r.z) < z_threshold;
  } else {
    const bool equal = r.abs_dev <= kDegenerateTol;
    r.z = equal ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), analytic - mc.mean);
    r.pass = equal;
  }
  return r;
}

}  // namespace plcvlc::mc

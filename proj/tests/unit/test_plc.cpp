// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "plc.hpp"
#include "specfun.hpp"

using namespace plcvlc;
using namespace plcvlc::plc;
using fixtures::rel;

namespace {

PlcModel fitted_model(int relays, int wires, double mean_snr, FitConfig cfg = {}) {
  const PlcTopology topo{relays, wires};
  const auto fading = normalize_fading(wires, 1.0);
  return {topo, fading, fit_lognormal_sum(topo, fading, cfg), mean_snr};
}

}  // namespace

TEST_CASE("cable attenuation") {
  PlcLinkParams link;
  CHECK(rel(cable_attenuation(link), 0.32857176572538461) < 1e-14);
  link.alpha2 = 0.0;
  CHECK(rel(cable_attenuation(link), std::exp(-2.0 * 0.0093 * 5.0)) < 1e-15);
  link.alpha1 = 0.0;
  CHECK(cable_attenuation(link) == 1.0);
  link.length_m = -1.0;
  CHECK_THROWS_AS(cable_attenuation(link), Error);
}

TEST_CASE("effective noise power") {
  PlcNoise noise;
  CHECK(effective_noise_power(noise) == doctest::Approx(1.5).epsilon(1e-15));
  noise.impulse_prob = 0.0;
  CHECK(effective_noise_power(noise) == noise.bg_var);
  noise.impulse_prob = 1.0;
  CHECK(effective_noise_power(noise) == doctest::Approx(11.0).epsilon(1e-15));
  for (double p : {0.0, 0.3, 1.0}) {
    noise.impulse_prob = p;
    CHECK(effective_noise_power(noise) >= noise.bg_var);
  }
}

TEST_CASE("mean branch snr from power") {
  PlcLinkParams link;
  PlcNoise noise;
  CHECK_THROWS_AS(mean_branch_snr(link, noise), Error);
  link.tx_power = 3.0;
  CHECK(rel(mean_branch_snr(link, noise), 3.0 * 0.32857176572538461 / 1.5) < 1e-14);
}

TEST_CASE("fading normalization") {
  CHECK(std::abs(normalize_fading(3, 1.0).mu_h - (-1.5493061443340548)) < 1e-14);
  CHECK(std::abs(normalize_fading(4, 1.0).mu_h - (-1.6931471805599453)) < 1e-14);
  CHECK(std::abs(normalize_fading(2, 1.0).mu_h - (-1.3465735902799727)) < 1e-14);
  CHECK(std::abs(normalize_fading(1, 1e-12).mu_h) < 1e-11);
  for (int k = 1; k <= 8; ++k) {
    const auto f = normalize_fading(k, 0.7);
    CHECK(std::abs(std::exp(2.0 * f.mu_h + 2.0 * f.sigma2_h) - 1.0 / k) < 1e-12);
  }
}

TEST_CASE("normalized fading has E{h^2} = 1/K by sampling") {
  const auto f = normalize_fading(4, 1.0);
  RngStream rng(123, 0);
  const int n = 10'000'000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double h2 = std::exp(2.0 * (f.mu_h + f.sigma_h() * rng.normal()));
    s += h2;
    s2 += h2 * h2;
  }
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 0.25) < 3.0 * se);
}

TEST_CASE("single-wire fit is nearly exact") {
  const auto fading = normalize_fading(1, 1.0);
  const auto fit = fit_lognormal_sum({1, 1}, fading);
  CHECK(fit.fit_error < 1e-3);
  CHECK(fit.a1 > 0.0);
  CHECK(fit.a2 > 0.0);
  CHECK(std::abs(fit.kappa - std::log(10.0) / 10.0) < 1e-15);
  // Against the exact lognormal CDF of S = h^2 on a fine grid.
  double worst = 0.0;
  for (double z = -3.0; z <= 3.0; z += 0.01) {
    const double x = std::exp(2.0 * fading.mu_h + 2.0 * fading.sigma_h() * z);
    worst = std::max(worst, std::abs(fit.sum_cdf(x) - specfun::std_normal_cdf(z)));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("multi-wire fits meet the error budget and are memoized") {
  for (int k : {2, 3}) {
    FitConfig cfg;
    cfg.samples = 1'000'000;
    const auto fading = normalize_fading(k, 1.0);
    const auto a = fit_lognormal_sum({1, k}, fading, cfg);
    const auto b = fit_lognormal_sum({1, k}, fading, cfg);
    CHECK(a.fit_error < 0.01);
    CHECK(a.a0 == b.a0);
    CHECK(a.a1 == b.a1);
    CHECK(a.a2 == b.a2);
  }
}

TEST_CASE("fit failure is reported") {
  FitConfig cfg;
  cfg.samples = 1'000'000;
  cfg.max_error = 1e-6;
  CHECK_THROWS_WITH_AS(fit_lognormal_sum({1, 3}, normalize_fading(3, 1.0), cfg),
                       doctest::Contains("fit error"), Error);
}

TEST_CASE("plc cdf and pdf against high-precision reference") {
  const auto model = fixtures::fixed_plc();
  CHECK(rel(model.cdf(1.0), 0.10117321495842238) < 1e-12);
  CHECK(rel(model.cdf(1e-3), 2.7592468994365639e-39) < 1e-10);
  CHECK(rel(model.pdf(1.0), 0.12186154801675605) < 1e-12);
  CHECK(rel(model.limiting_cdf(), 0.95501730460730115) < 1e-14);
  CHECK(model.cdf(0.0) == 0.0);
  CHECK(model.cdf(1e-300) == 0.0);
  CHECK(rel(model.cdf(1e30), model.limiting_cdf()) < 1e-6);
}

TEST_CASE("plc cdf properties on the fitted Table-II-style model") {
  const auto m1 = fitted_model(1, 3, 10.0);
  const auto m4 = fitted_model(4, 3, 10.0);
  CHECK(m1.limiting_cdf() >= 0.99);
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double g = 10.0 * std::pow(10.0, -6.0 + 12.0 * i / 1000.0);
    const double f = m1.cdf(g);
    CHECK(f >= prev);
    CHECK(f <= 1.0);
    CHECK(m1.pdf(g) >= 0.0);
    CHECK(m4.cdf(g) <= f);
    prev = f;
  }
  const double g = 10.0;
  const double fd = fixtures::central_diff([&](double x) { return m1.cdf(x); }, g, g * 1e-6);
  CHECK(rel(m1.pdf(g), fd) < 1e-5);
}

TEST_CASE("plc pdf integrates to nearly one") {
  const auto m = fitted_model(1, 3, 10.0);
  const auto& rule = specfun::cached_gauss_legendre_rule(64);
  const double mass =
      specfun::integrate_graded(rule, [&](double x) { return m.pdf(x); }, 1e-2, 1e4, 2.0);
  CHECK(mass >= 0.98);
  CHECK(mass <= 1.0);
}

TEST_CASE("lower tail point") {
  const auto m = fitted_model(2, 3, 10.0);
  const double g = m.lower_tail_point(1e-300);
  CHECK(rel(m.cdf(g), 1e-300) < 1e-6);
}

TEST_CASE("single-wire single-relay cdf matches the exact lognormal law") {
  const auto m = fitted_model(1, 1, 10.0);
  const auto f = m.fading();
  for (double z = -2.5; z <= 2.5; z += 0.25) {
    const double g = 10.0 * std::exp(2.0 * f.mu_h + 2.0 * f.sigma_h() * z);
    CHECK(std::abs(m.cdf(g) - specfun::std_normal_cdf(z)) <= m.fit().fit_error + 1e-12);
  }
}

TEST_CASE("plc sampler") {
  SUBCASE("degenerate fading is deterministic") {
    RngStream rng(1, 0);
    const LognormalFading f{-0.3, 1e-20};
    CHECK(rel(sample_plc_snr(rng, {1, 1}, f, 5.0), 5.0 * std::exp(-0.6)) < 1e-9);
  }
  SUBCASE("exact sampler agrees with the fitted CDF") {
    const auto m = fitted_model(2, 3, 10.0);
    RngStream rng(99, 0);
    std::vector<double> xs(1'000'000);
    for (auto& x : xs) x = sample_plc_snr(rng, m.topology(), m.fading(), m.mean_branch_snr());
    const double ks = fixtures::ks_distance(xs, [&](double g) { return m.cdf(g); });
    CHECK(ks < std::max(0.01, 2.0 * m.fit().fit_error));
  }
  SUBCASE("more relays dominate stochastically") {
    const auto fading = normalize_fading(3, 1.0);
    RngStream r1(5, 0), r2(5, 1);
    std::vector<double> a(200000), b(200000);
    for (auto& x : a) x = sample_plc_snr(r1, {1, 3}, fading, 10.0);
    for (auto& x : b) x = sample_plc_snr(r2, {2, 3}, fading, 10.0);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    int violations = 0;
    for (std::size_t i = 1000; i < a.size() - 1000; i += 1000) violations += (b[i] < a[i]);
    CHECK(violations == 0);
  }
  SUBCASE("mixture mode rescales each relay by its noise state") {
    // M = 1: E{gamma} = mean * E{S} * sigma_PLC^2 * E{1 / var} with E{S} = 1.
    PlcNoise noise;
    const auto fading = normalize_fading(3, 1.0);
    const double expected = 1.5 * (0.95 / 1.0 + 0.05 / 11.0);
    RngStream rng(3, 0);
    const int n = 1'000'000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = sample_plc_snr_mixture(rng, {1, 3}, fading, 1.0, noise);
      s += v;
      s2 += v * v;
    }
    const double mean = s / n;
    CHECK(std::abs(mean - expected) < 4.0 * std::sqrt((s2 / n - mean * mean) / n));
  }
}

// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "specfun.hpp"
#include "vlc.hpp"

using namespace plcvlc;
using namespace plcvlc::vlc;
using fixtures::rel;

TEST_CASE("Lambertian order") {
  CHECK(std::abs(lambertian_order(60.0) - 1.0) < 1e-14);
  CHECK(rel(lambertian_order(30.0), 4.818841679306418) < 1e-13);
  CHECK(rel(lambertian_order(15.0), 19.993727358517101) < 1e-13);
  CHECK_THROWS_AS(lambertian_order(90.0), Error);
  CHECK_THROWS_AS(lambertian_order(0.0), Error);
}

TEST_CASE("concentrator gain and receiver constant") {
  ReceiverParams rx;
  CHECK(rel(concentrator_gain(0.0, rx), 3.0) < 1e-14);
  CHECK(concentrator_gain(61.0, rx) == 0.0);
  rx.fov_half_angle = 75.0;
  CHECK(rel(concentrator_gain(10.0, rx), 2.4115427318801044) < 1e-14);
  rx.fov_half_angle = 60.0;
  CHECK(rel(xi_constant(rx), 4.7746482927568601e-5) < 1e-14);
  const double xi = xi_constant(rx);
  rx.pd_area *= 2.0;
  CHECK(rel(xi_constant(rx), 2.0 * xi) < 1e-15);
  rx.fov_half_angle = 120.0;
  CHECK_THROWS_WITH_AS(rx.validate(), doctest::Contains("vlc.fov_deg"), Error);
}

TEST_CASE("model constants against high-precision reference") {
  const auto m = fixtures::fixed_vlc();
  CHECK(std::abs(m.eps() - 2.0) < 1e-15);
  CHECK(rel(m.ups(), 0.0039088200952233594) < 1e-13);
  CHECK(rel(m.gamma_e(), 0.14590250444496639) < 1e-13);
  CHECK(rel(m.gamma_c(), 2.3344400711194623) < 1e-13);
  CHECK(rel(vlc_cdf_max(0.5, m), 0.28095078261096789) < 1e-13);
  CHECK(rel(vlc_pdf_max(0.5, m), 0.77914502930598877) < 1e-12);
  CHECK_FALSE(m.edge_outside_fov());
}

TEST_CASE("DC channel gain") {
  const auto m = fixtures::fixed_vlc();
  CHECK(rel(dc_channel_gain(2.5, m), 3.8197186342054881e-6) < 1e-13);
  CHECK(rel(dc_channel_gain(0.0, m), m.xi() * 2.0 / (2.5 * 2.5)) < 1e-14);
  const double he = dc_channel_gain(2.5, m);
  const double hc = dc_channel_gain(0.0, m);
  CHECK(rel(he * he * m.mean_snr(), m.gamma_e()) < 1e-13);
  CHECK(rel(hc * hc * m.mean_snr(), m.gamma_c()) < 1e-13);
}

TEST_CASE("support identities") {
  const auto m = fixtures::fixed_vlc();
  CHECK(rel(m.gamma_c() / m.gamma_e(), 16.0) < 1e-12);
  const auto [ge1, gc1] = snr_support({2.5, 2.5}, 1.0, m.xi(), 1e8);
  const auto [ge2, gc2] = snr_support({2.5, 2.5}, 1.0, m.xi(), 3e8);
  CHECK(rel(ge2, 3.0 * ge1) < 1e-13);
  CHECK(rel(gc2, 3.0 * gc1) < 1e-13);
  const auto [ge3, gc3] = snr_support({2.5, 1e-6}, 1.0, m.xi(), 1e8);
  CHECK(rel(ge3, gc3) < 1e-9);

  RngStream rng(17, 0);
  for (int t = 0; t < 50; ++t) {
    const double L = 1.5 + 2.0 * rng.uniform();
    const double re = 1.0 + 3.0 * rng.uniform();
    const double phi = 10.0 + 60.0 * rng.uniform();
    const VlcModel v({L, re}, lambertian_order(phi), 5e-5, std::pow(10.0, 6.0 + 8.0 * rng.uniform()), 1);
    const double x_c = std::pow(v.gamma_c() / v.mean_snr(), -v.inv_order());
    const double x_e = std::pow(v.gamma_e() / v.mean_snr(), -v.inv_order());
    CHECK(std::abs(v.eps() - v.ups() * x_c - 1.0) < 1e-10);
    CHECK(std::abs(v.eps() - v.ups() * x_e) < 1e-10);
    CHECK(rel(v.gamma_c() / v.gamma_e(), std::pow((re * re + L * L) / (L * L), v.lambertian_order() + 3.0)) <
          1e-10);
  }
}

TEST_CASE("edge outside FOV is flagged") {
  ReceiverParams rx;
  rx.fov_half_angle = 30.0;
  const auto m = VlcModel::from_receiver({2.5, 2.5}, rx, 60.0, 1e10, 1);
  CHECK(m.edge_outside_fov());
}

TEST_CASE("single-link cdf and pdf") {
  const auto m = fixtures::fixed_vlc(1);
  CHECK(std::abs(vlc_cdf_single(m.gamma_e(), m)) < 1e-10);
  CHECK(std::abs(vlc_cdf_single(m.gamma_c(), m) - 1.0) < 1e-10);
  const auto& rule = specfun::cached_gauss_legendre_rule(64);
  auto pdf = [&](double g) { return vlc_pdf_single(g, m); };
  CHECK(std::abs(specfun::integrate_affine(rule, pdf, m.gamma_e(), m.gamma_c()) - 1.0) < 1e-8);
  for (int i = 1; i <= 100; ++i) {
    const double g = m.gamma_e() + (m.gamma_c() - m.gamma_e()) * i / 100.0;
    CHECK(std::abs(specfun::integrate_affine(rule, pdf, m.gamma_e(), g) - vlc_cdf_single(g, m)) < 1e-8);
  }
}

TEST_CASE("best-of-N forms") {
  for (int n : {1, 2, 4, 8}) {
    const auto m = fixtures::fixed_vlc(n);
    CHECK(std::abs(vlc_cdf_max(m.gamma_e(), m)) < 1e-9);
    CHECK(std::abs(vlc_cdf_max(m.gamma_c(), m) - 1.0) < 1e-9);
    CHECK(std::abs(vlc_cdf_max_expanded(m.gamma_c(), m) - 1.0) < 1e-9);
    for (int i = 0; i < 200; ++i) {
      const double g = m.gamma_e() + (m.gamma_c() - m.gamma_e()) * (i + 0.5) / 200.0;
      CHECK(std::abs(vlc_cdf_max_expanded(g, m) - vlc_cdf_max(g, m)) < 1e-10);
      CHECK(std::abs(vlc_pdf_max_expanded(g, m) - vlc_pdf_max(g, m)) <
            1e-10 * std::max(1.0, vlc_pdf_max(g, m)));
      if (n == 1) {
        CHECK(vlc_cdf_max(g, m) == vlc_cdf_single(g, m));
        CHECK(vlc_pdf_max(g, m) == vlc_pdf_single(g, m));
      }
    }
  }
}

TEST_CASE("cdf term coefficients reproduce the expansion") {
  const auto m = fixtures::fixed_vlc(4);
  const double g = 0.9;
  double sum = 0.0;
  for (int i = 0; i <= 4; ++i) sum += m.cdf_term_coeff(i) * std::pow(g, -i * m.inv_order());
  CHECK(std::abs(sum - vlc_cdf_max(g, m)) < 1e-11);
  double pdf = 0.0;
  for (int i = 0; i <= 3; ++i)
    pdf += m.pdf_term_coeff(i) * 4 * m.inv_order() * std::pow(g, -1.0 - (i + 1) * m.inv_order());
  CHECK(rel(pdf, vlc_pdf_max(g, m)) < 1e-11);
}

TEST_CASE("pdf matches central difference and N orders the cdf") {
  const auto m1 = fixtures::fixed_vlc(1);
  const auto m4 = fixtures::fixed_vlc(4);
  for (int i = 1; i < 50; ++i) {
    const double g = m4.gamma_e() + (m4.gamma_c() - m4.gamma_e()) * i / 50.0;
    const double fd = fixtures::central_diff([&](double x) { return vlc_cdf_max(x, m4); }, g, g * 1e-6);
    CHECK(rel(vlc_pdf_max(g, m4), fd) < 1e-4);
    CHECK(vlc_cdf_max(g, m4) <= vlc_cdf_max(g, m1));
  }
}

TEST_CASE("vlc sampler") {
  for (int n : {1, 4}) {
    const auto m = fixtures::fixed_vlc(n);
    RngStream rng(2024, static_cast<std::uint64_t>(n));
    std::vector<double> xs(1'000'000);
    for (auto& x : xs) {
      x = sample_vlc_snr(rng, m);
      REQUIRE(x >= m.gamma_e());
      REQUIRE(x <= m.gamma_c());
    }
    CHECK(fixtures::ks_distance(xs, [&](double g) { return vlc_cdf_max(g, m); }) < 0.005);
  }
}

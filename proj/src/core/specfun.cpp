// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace plcvlc::specfun {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

constexpr int kMaxIter = 10000;
constexpr double kGammaEps = 1e-16;

// Regularized lower series P(p, x), valid and fast for x < p + 1.
double gamma_p_series(double p, double x) {
  double term = 1.0 / p;
  double sum = term;
  double ap = p;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaEps) break;
  }
  return sum * std::exp(-x + p * std::log(x) - std::lgamma(p));
}

// Gamma(p, x) e^x x^-p by modified Lentz, valid for x >= p + 1.
double gamma_q_fraction(double p, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - p;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - p);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaEps) break;
  }
  return h;
}

void check_gamma_domain(double p, double x) {
  require(p > 0.0 && std::isfinite(p), ErrorKind::Domain,
          "incomplete gamma: p must be positive, got " + std::to_string(p));
  require(x >= 0.0, ErrorKind::Domain,
          "incomplete gamma: x must be nonnegative, got " + std::to_string(x));
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double std_normal_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

double log_std_normal_cdf(double x) {
  if (x > 0.0) return std::log1p(-0.5 * std::erfc(x * kInvSqrt2));
  if (x > -37.0) return std::log(std_normal_cdf(x));
  // Asymptotic Mills-ratio expansion; erfc underflows below here.
  const double inv2 = 1.0 / (x * x);
  const double series = 1.0 - inv2 + 3.0 * inv2 * inv2 - 15.0 * inv2 * inv2 * inv2;
  return -0.5 * x * x - kLogSqrt2Pi - std::log(-x) + std::log(series);
}

double std_normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, ErrorKind::Domain,
          "std_normal_quantile: p must lie in (0, 1)");
  // Acklam's rational approximation, then two Halley steps against erfc.
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x = 0.0;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    // Work on whichever tail keeps the residual well conditioned.
    const double e = (x < 0.0) ? std_normal_cdf(x) - p
                               : (1.0 - p) - std_normal_cdf(-x);
    const double u = e / std_normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double gamma_q(double p, double x) {
  check_gamma_domain(p, x);
  if (x == 0.0) return 1.0;
  if (p == 0.5) return std::erfc(std::sqrt(x));
  if (x < p + 1.0) return 1.0 - gamma_p_series(p, x);
  return gamma_q_fraction(p, x) * std::exp(-x + p * std::log(x) - std::lgamma(p));
}

double upper_incomplete_gamma(double p, double x) {
  check_gamma_domain(p, x);
  if (x == 0.0) return std::tgamma(p);
  if (x < p + 1.0) return std::tgamma(p) * (1.0 - gamma_p_series(p, x));
  return gamma_q_fraction(p, x) * std::exp(-x + p * std::log(x));
}

QuadratureRule gauss_legendre_rule(int order) {
  require(order >= 1 && order <= 256, ErrorKind::Domain,
          "gauss_legendre_rule: order must lie in [1, 256], got " + std::to_string(order));
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);

  const int n = order;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      // P_n'(x) from the standard three-term identity.
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      if (n == 1) dp = 1.0;
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    // Re-evaluate the derivative at the converged root.
    {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // i = 0 is the largest root; store mirrored so nodes increase.
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const QuadratureRule& cached_gauss_legendre_rule(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<QuadratureRule>(gauss_legendre_rule(order));
  return *slot;
}

std::uint64_t binomial_coeff(int n, int k) {
  require(n >= 0 && k >= 0 && k <= n && n <= 64, ErrorKind::Domain,
          "binomial_coeff: need 0 <= k <= n <= 64");
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 65>, 65> t{};
    for (int i = 0; i <= 64; ++i) {
      t[i][0] = 1;
      for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j < i ? t[i - 1][j] : 0);
    }
    return t;
  }();
  return table[n][k];
}

}  // namespace plcvlc::specfun

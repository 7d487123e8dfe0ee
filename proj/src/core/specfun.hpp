// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace plcvlc::specfun {

/// Nodes and weights of an N-point Gauss-Legendre rule on [-1, 1].
/// Nodes are strictly increasing and mirrored exactly about zero.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Standard normal CDF, evaluated through erfc so both tails keep full
/// relative precision.
double std_normal_cdf(double x);

/// ln Phi(x); stays finite for arguments far into the lower tail.
double log_std_normal_cdf(double x);

/// Standard normal density.
double std_normal_pdf(double x);

/// Inverse of std_normal_cdf on (0, 1).
double std_normal_quantile(double p);

/// Upper incomplete gamma Gamma(p, x) for p > 0, x >= 0.
/// Series for x < p + 1, Lentz continued fraction otherwise.
double upper_incomplete_gamma(double p, double x);

/// Regularized upper incomplete gamma Q(p, x) = Gamma(p, x) / Gamma(p).
double gamma_q(double p, double x);

/// Gauss-Legendre rule of the given order (1..256). Roots by Newton
/// iteration on P_n from Chebyshev-like initial guesses.
QuadratureRule gauss_legendre_rule(int order);

/// Same rule, computed once per order and shared afterwards.
const QuadratureRule& cached_gauss_legendre_rule(int order);

/// Exact C(n, k) for k <= n <= 64.
std::uint64_t binomial_coeff(int n, int k);

/// Affine map of [a, b] onto [-1, 1] followed by the rule:
///   (b - a)/2 * sum_j w_j f((b - a)/2 x_j + (b + a)/2).
template <class F>
double integrate_affine(const QuadratureRule& rule, F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double sum = 0.0;
  for (int j = 0; j < rule.order; ++j) {
    sum += rule.weights[j] * f(half * rule.nodes[j] + mid);
  }
  return half * sum;
}

/// The affine rule applied on geometrically graded panels covering
/// [a, b] (0 < a < b), at most `ratio` wide each in the multiplicative sense.
/// Power laws spanning many decades stay resolved panel by panel.
template <class F>
double integrate_graded(const QuadratureRule& rule, F&& f, double a, double b,
                        double ratio = 10.0);

}  // namespace plcvlc::specfun

#include "specfun_inl.hpp"

// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace plcvlc::detail {

template <std::size_t D>
struct SimplexResult {
  std::array<double, D> x{};
  double value = 0.0;
  int evaluations = 0;
};

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2). Derivative-free, so it copes with the minimax objective.
template <std::size_t D, class F>
SimplexResult<D> nelder_mead(F&& f, const std::array<double, D>& start,
                             const std::array<double, D>& step, int max_evals,
                             double ftol = 1e-13) {
  std::array<std::array<double, D>, D + 1> pts{};
  std::array<double, D + 1> vals{};
  int evals = 0;
  auto eval = [&](const std::array<double, D>& x) {
    ++evals;
    return f(x);
  };
  pts[0] = start;
  vals[0] = eval(start);
  for (std::size_t i = 0; i < D; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += step[i];
    vals[i + 1] = eval(pts[i + 1]);
  }

  std::array<std::size_t, D + 1> order{};
  while (evals < max_evals) {
    for (std::size_t i = 0; i <= D; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[D];
    const std::size_t second = order[D - 1];
    if (vals[worst] - vals[best] <= ftol * (1e-30 + std::abs(vals[best]))) break;

    std::array<double, D> centroid{};
    for (std::size_t i = 0; i <= D; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < D; ++d) centroid[d] += pts[i][d] / D;
    }
    auto along = [&](double t) {
      std::array<double, D> x{};
      for (std::size_t d = 0; d < D; ++d) x[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
      return x;
    };

    const auto reflected = along(-1.0);
    const double fr = eval(reflected);
    if (fr < vals[best]) {
      const auto expanded = along(-2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const auto contracted = along(outside ? -0.5 : 0.5);
    const double fc = eval(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= D; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < D; ++d) pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
      vals[i] = eval(pts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= D; ++i)
    if (vals[i] < vals[best]) best = i;
  return {pts[best], vals[best], evals};
}

}  // namespace plcvlc::detail

// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>

namespace plcvlc::specfun {

template <class F>
double integrate_graded(const QuadratureRule& rule, F&& f, double a, double b,
                        double ratio) {
  if (!(b > a)) return 0.0;
  const double span = std::log(b / a);
  const int panels = std::max(1, static_cast<int>(std::ceil(span / std::log(ratio))));
  const double step = span / panels;
  const double log_a = std::log(a);
  double total = 0.0;
  double lo = a;
  for (int i = 1; i <= panels; ++i) {
    const double hi = (i == panels) ? b : std::exp(log_a + i * step);
    total += integrate_affine(rule, f, lo, hi);
    lo = hi;
  }
  return total;
}

}  // namespace plcvlc::specfun

// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "cascade.hpp"
#include "plc.hpp"
#include "vlc.hpp"

namespace fixtures {

// PLC hop with hand-picked constants a0 = 2, a1 = 1.5, a2 = 0.05, mean 10, M = 2.
inline plcvlc::plc::PlcModel fixed_plc(int relays = 2) {
  plcvlc::plc::LognormalSumFit fit;
  fit.a0 = 2.0;
  fit.a1 = 1.5;
  fit.a2 = 0.05;
  return {{relays, 3}, plcvlc::plc::normalize_fading(3, 1.0), fit, 10.0};
}

// L = r_e = 2.5, 60 deg semiangle (m = 1), 60 deg FOV, mean 1e10 (100 dB).
inline plcvlc::vlc::VlcModel fixed_vlc(int leds = 2) {
  plcvlc::vlc::ReceiverParams rx;
  return plcvlc::vlc::VlcModel::from_receiver({2.5, 2.5}, rx, 60.0, 1e10, leds);
}

inline plcvlc::cascade::CascadeModel fixed_cascade() { return {fixed_plc(), fixed_vlc()}; }

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Kolmogorov-Smirnov distance of a sample against a CDF.
inline double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, std::abs((i + 1) / n - f), std::abs(f - i / n)});
  }
  return d;
}

}  // namespace fixtures

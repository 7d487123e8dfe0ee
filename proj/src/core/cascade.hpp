// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Decode-and-forward composition of the two hops: the end-to-end SNR is
// min(PLC, VLC-max), and the metrics are built from its CDF/PDF, piecewise
// over [0, gamma_e), [gamma_e, gamma_c] and (gamma_c, inf).

#include "plc.hpp"
#include "vlc.hpp"

namespace plcvlc::cascade {

struct CascadeModel {
  plc::PlcModel plc;
  vlc::VlcModel vlc;
};

struct ModulationParams {
  double p_mod = 0.5;  // BPSK
  double q_mod = 1.0;

  void validate() const;
};

enum class QuadratureScheme {
  Graded,  // affine Gauss-Legendre on geometrically graded panels
  Affine,  // one affine map per integral, as written in closed form
};

struct MetricConfig {
  int quad_order = 64;
  double gamma_th = 1.0;  // linear
  QuadratureScheme scheme = QuadratureScheme::Graded;

  void validate() const;
};

/// The four pieces of the CDF-form average BEP; value = (I1 - I2 + I3 + I4) q^p / (2 Gamma(p)).
struct BepTerms {
  double i1 = 0.0;
  double i2 = 0.0;
  double i3 = 0.0;
  double i4 = 0.0;
  double value = 0.0;
};

/// C = C1 + C2 - C3 in bits/s/Hz; C2 is carried as its two parts.
struct CapacityTerms {
  double c1 = 0.0;
  double c2_vlc = 0.0;   // from I6, the VLC-density part
  double c2_joint = 0.0; // from I7, subtracted inside C2
  double c3 = 0.0;
  double value = 0.0;

  double c2() const { return c2_vlc - c2_joint; }
};

double end_to_end_cdf(double gamma, const CascadeModel& model);
double end_to_end_pdf(double gamma, const CascadeModel& model);

double outage_probability(const CascadeModel& model, double gamma_th);

BepTerms average_bep_terms(const CascadeModel& model, const ModulationParams& mod,
                           const MetricConfig& cfg);
double average_bep(const CascadeModel& model, const ModulationParams& mod,
                   const MetricConfig& cfg);

CapacityTerms ergodic_capacity_terms(const CascadeModel& model, const MetricConfig& cfg);
double ergodic_capacity(const CascadeModel& model, const MetricConfig& cfg);

}  // namespace plcvlc::cascade

// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Multiple-LED VLC hop with a Lambertian line-of-sight channel. Users are
// uniform over a disk of radius r_e, so the per-link SNR is a bounded power
// law on [gamma_e, gamma_c]; the user attaches to the best of N i.i.d. links.

#include <utility>

#include "rng.hpp"

namespace plcvlc::vlc {

struct VlcGeometry {
  double vertical_len = 2.5;  // L, m
  double cell_radius = 2.5;   // r_e, m

  void validate() const;
};

struct ReceiverParams {
  double pd_area = 1e-4;       // A, m^2
  double responsivity = 1.0;   // R_p, A/W
  double filter_gain = 1.0;    // U
  double refr_index = 1.5;     // eta
  double fov_half_angle = 60;  // Psi, degrees

  void validate() const;
};

/// m = -1 / log2(cos(semiangle)).
double lambertian_order(double semiangle_deg);

/// eta^2 / sin^2(Psi) inside the field of view, 0 outside.
double concentrator_gain(double psi_deg, const ReceiverParams& rx);

/// A R_p U g / (2 pi) with the in-FOV concentrator gain.
double xi_constant(const ReceiverParams& rx);

class VlcModel {
 public:
  VlcModel(VlcGeometry geometry, double lambertian_order, double xi, double mean_snr,
           int num_leds);

  /// Builds from physical receiver parameters and the LED semiangle (deg).
  static VlcModel from_receiver(const VlcGeometry& geometry, const ReceiverParams& rx,
                                double semiangle_deg, double mean_snr, int num_leds);

  const VlcGeometry& geometry() const { return geometry_; }
  double lambertian_order() const { return m_; }
  double xi() const { return xi_; }
  double eps() const { return eps_; }
  double ups() const { return ups_; }
  double mean_snr() const { return mean_snr_; }
  int num_leds() const { return num_leds_; }
  double gamma_e() const { return gamma_e_; }
  double gamma_c() const { return gamma_c_; }

  /// 1 / (m + 3), the exponent of the power law.
  double inv_order() const { return inv_m3_; }

  /// True when the cell-edge incidence angle arctan(r_e / L) exceeds the
  /// receiver FOV, i.e. the constant concentrator gain assumption breaks.
  bool edge_outside_fov() const { return edge_outside_fov_; }

  /// Binomial coefficient of the expanded CDF term i, including
  /// mean_snr^(i/(m+3)): (-1)^i C(N, i) eps^(N-i) ups^i mean^(i/(m+3)).
  double cdf_term_coeff(int i) const;
  /// Same for the PDF expansion (N - 1 terms, shifted by one power of ups).
  double pdf_term_coeff(int i) const;

 private:
  VlcGeometry geometry_;
  double m_;
  double xi_;
  double mean_snr_;
  int num_leds_;
  double inv_m3_;
  double eps_;
  double ups_;
  double gamma_e_;
  double gamma_c_;
  bool edge_outside_fov_ = false;
};

/// h_u = Xi (m+1) L^(m+1) / (r^2 + L^2)^((m+3)/2).
double dc_channel_gain(double radial_dist, const VlcModel& model);

/// (gamma_e, gamma_c) from geometry, Lambertian order, Xi and mean SNR.
std::pair<double, double> snr_support(const VlcGeometry& geometry, double lambertian_order,
                                      double xi, double mean_snr);

double vlc_cdf_single(double gamma, const VlcModel& model);
double vlc_pdf_single(double gamma, const VlcModel& model);

/// Best-of-N statistics in power form: F^N and N F^(N-1) f.
double vlc_cdf_max(double gamma, const VlcModel& model);
double vlc_pdf_max(double gamma, const VlcModel& model);

/// The same statistics written as alternating binomial sums.
double vlc_cdf_max_expanded(double gamma, const VlcModel& model);
double vlc_pdf_max_expanded(double gamma, const VlcModel& model);

/// N i.i.d. uniform-disk users mapped through the channel; returns the max SNR.
double sample_vlc_snr(RngStream& rng, const VlcModel& model);

}  // namespace plcvlc::vlc

// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vlc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "specfun.hpp"

namespace plcvlc::vlc {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string num(double v) { return std::to_string(v); }

// ln[Xi (m+1) L^(m+1)], the log of the numerator shared by h_u, ups and
// the support bounds.
double log_gain_numerator(const VlcGeometry& g, double m, double xi) {
  return std::log(xi) + std::log(m + 1.0) + (m + 1.0) * std::log(g.vertical_len);
}

// Neumaier-compensated sum; the binomial expansions alternate in sign.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

void VlcGeometry::validate() const {
  require(vertical_len > 0.0, ErrorKind::Validation,
          "vlc.vertical_len_m must be > 0, got " + num(vertical_len));
  require(cell_radius > 0.0, ErrorKind::Validation,
          "vlc.cell_radius_m must be > 0, got " + num(cell_radius));
}

void ReceiverParams::validate() const {
  require(pd_area > 0.0, ErrorKind::Validation, "vlc.pd_area must be > 0, got " + num(pd_area));
  require(responsivity > 0.0, ErrorKind::Validation,
          "vlc.responsivity must be > 0, got " + num(responsivity));
  require(filter_gain > 0.0, ErrorKind::Validation,
          "vlc.filter_gain must be > 0, got " + num(filter_gain));
  require(refr_index > 0.0, ErrorKind::Validation,
          "vlc.refr_index must be > 0, got " + num(refr_index));
  require(fov_half_angle > 0.0 && fov_half_angle <= 90.0, ErrorKind::Validation,
          "vlc.fov_deg must lie in (0, 90], got " + num(fov_half_angle));
}

double lambertian_order(double semiangle_deg) {
  require(semiangle_deg > 0.0 && semiangle_deg < 90.0, ErrorKind::Domain,
          "lambertian_order: semiangle must lie in (0, 90) degrees, got " + num(semiangle_deg));
  return -1.0 / std::log2(std::cos(semiangle_deg * kDegToRad));
}

double concentrator_gain(double psi_deg, const ReceiverParams& rx) {
  require(psi_deg >= 0.0, ErrorKind::Domain, "concentrator_gain: incidence angle must be >= 0");
  if (psi_deg > rx.fov_half_angle) return 0.0;
  const double s = std::sin(rx.fov_half_angle * kDegToRad);
  return rx.refr_index * rx.refr_index / (s * s);
}

double xi_constant(const ReceiverParams& rx) {
  return rx.pd_area * rx.responsivity * rx.filter_gain * concentrator_gain(0.0, rx) /
         (2.0 * std::numbers::pi);
}

VlcModel::VlcModel(VlcGeometry geometry, double lambertian_order, double xi, double mean_snr,
                   int num_leds)
    : geometry_(geometry), m_(lambertian_order), xi_(xi), mean_snr_(mean_snr), num_leds_(num_leds) {
  geometry_.validate();
  require(m_ > 0.0 && std::isfinite(m_), ErrorKind::Validation, "Lambertian order must be > 0");
  require(xi_ > 0.0 && std::isfinite(xi_), ErrorKind::Validation,
          "receiver constant Xi must be > 0 (check pd_area, responsivity, filter_gain)");
  require(mean_snr_ > 0.0 && std::isfinite(mean_snr_), ErrorKind::Validation,
          "mean VLC SNR must be positive and finite");
  require(num_leds_ >= 1 && num_leds_ <= 16, ErrorKind::Validation,
          "vlc.n (LEDs) must lie in [1, 16], got " + std::to_string(num_leds_));

  const double L = geometry_.vertical_len;
  const double re = geometry_.cell_radius;
  inv_m3_ = 1.0 / (m_ + 3.0);
  eps_ = (re * re + L * L) / (re * re);
  const double log_num = log_gain_numerator(geometry_, m_, xi_);
  ups_ = std::exp(2.0 * inv_m3_ * log_num) / (re * re);
  const auto [ge, gc] = snr_support(geometry_, m_, xi_, mean_snr_);
  gamma_e_ = ge;
  gamma_c_ = gc;
  require(gamma_e_ > 0.0 && gamma_e_ < gamma_c_ && std::isfinite(gamma_c_), ErrorKind::Numerical,
          "VLC SNR support [gamma_e, gamma_c] is degenerate or not representable");
}

VlcModel VlcModel::from_receiver(const VlcGeometry& geometry, const ReceiverParams& rx,
                                 double semiangle_deg, double mean_snr, int num_leds) {
  rx.validate();
  geometry.validate();
  VlcModel model(geometry, vlc::lambertian_order(semiangle_deg), xi_constant(rx), mean_snr,
                 num_leds);
  const double edge_deg = std::atan(geometry.cell_radius / geometry.vertical_len) / kDegToRad;
  model.edge_outside_fov_ = edge_deg > rx.fov_half_angle;
  return model;
}

double VlcModel::cdf_term_coeff(int i) const {
  const double sign = (i % 2 == 0) ? 1.0 : -1.0;
  return sign * static_cast<double>(specfun::binomial_coeff(num_leds_, i)) *
         std::pow(eps_, num_leds_ - i) * std::pow(ups_, i) * std::pow(mean_snr_, i * inv_m3_);
}

double VlcModel::pdf_term_coeff(int i) const {
  const double sign = (i % 2 == 0) ? 1.0 : -1.0;
  return sign * static_cast<double>(specfun::binomial_coeff(num_leds_ - 1, i)) *
         std::pow(eps_, num_leds_ - 1 - i) * std::pow(ups_, i + 1) *
         std::pow(mean_snr_, (i + 1) * inv_m3_);
}

double dc_channel_gain(double radial_dist, const VlcModel& model) {
  require(radial_dist >= 0.0, ErrorKind::Domain, "dc_channel_gain: radius must be >= 0");
  const double L = model.geometry().vertical_len;
  const double m = model.lambertian_order();
  return std::exp(log_gain_numerator(model.geometry(), m, model.xi()) -
                  0.5 * (m + 3.0) * std::log(radial_dist * radial_dist + L * L));
}

std::pair<double, double> snr_support(const VlcGeometry& geometry, double lambertian_order,
                                      double xi, double mean_snr) {
  geometry.validate();
  const double m = lambertian_order;
  const double L = geometry.vertical_len;
  const double re = geometry.cell_radius;
  const double log_base = std::log(mean_snr) + 2.0 * log_gain_numerator(geometry, m, xi);
  const double gamma_e = std::exp(log_base - (m + 3.0) * std::log(re * re + L * L));
  const double gamma_c = std::exp(log_base - 2.0 * (m + 3.0) * std::log(L));
  return {gamma_e, gamma_c};
}

double vlc_cdf_single(double gamma, const VlcModel& model) {
  if (gamma < model.gamma_e()) return 0.0;
  if (gamma > model.gamma_c()) return 1.0;
  const double y = model.ups() * std::exp(-model.inv_order() * std::log(gamma / model.mean_snr()));
  return std::clamp(model.eps() - y, 0.0, 1.0);
}

double vlc_pdf_single(double gamma, const VlcModel& model) {
  if (gamma < model.gamma_e() || gamma > model.gamma_c()) return 0.0;
  const double k = model.inv_order();
  return model.ups() * k *
         std::exp(k * std::log(model.mean_snr()) - (1.0 + k) * std::log(gamma));
}

double vlc_cdf_max(double gamma, const VlcModel& model) {
  return std::pow(vlc_cdf_single(gamma, model), model.num_leds());
}

double vlc_pdf_max(double gamma, const VlcModel& model) {
  const int n = model.num_leds();
  const double f = vlc_pdf_single(gamma, model);
  if (f == 0.0) return 0.0;
  return n * std::pow(vlc_cdf_single(gamma, model), n - 1) * f;
}

double vlc_cdf_max_expanded(double gamma, const VlcModel& model) {
  if (gamma < model.gamma_e()) return 0.0;
  if (gamma > model.gamma_c()) return 1.0;
  const int n = model.num_leds();
  const double y = model.ups() * std::exp(-model.inv_order() * std::log(gamma / model.mean_snr()));
  CompensatedSum sum;
  for (int i = 0; i <= n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    sum.add(sign * static_cast<double>(specfun::binomial_coeff(n, i)) *
            std::pow(model.eps(), n - i) * std::pow(y, i));
  }
  return sum.value();
}

double vlc_pdf_max_expanded(double gamma, const VlcModel& model) {
  if (gamma < model.gamma_e() || gamma > model.gamma_c()) return 0.0;
  const int n = model.num_leds();
  const double k = model.inv_order();
  const double y = model.ups() * std::exp(-k * std::log(gamma / model.mean_snr()));
  CompensatedSum sum;
  for (int i = 0; i <= n - 1; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    sum.add(sign * static_cast<double>(specfun::binomial_coeff(n - 1, i)) *
            std::pow(model.eps(), n - 1 - i) * std::pow(y, i + 1));
  }
  return n * k * sum.value() / gamma;
}

double sample_vlc_snr(RngStream& rng, const VlcModel& model) {
  // r = r_e sqrt(u) per LED. The SNR decreases in r, so the best link is
  // the one with the smallest radius.
  double u_min = 1.0;
  for (int n = 0; n < model.num_leds(); ++n) u_min = std::min(u_min, rng.uniform());
  const double re = model.geometry().cell_radius;
  const double r2 = re * re * u_min;
  const double L = model.geometry().vertical_len;
  const double m = model.lambertian_order();
  const double log_gamma = std::log(model.mean_snr()) +
                           2.0 * log_gain_numerator(model.geometry(), m, model.xi()) -
                           (m + 3.0) * std::log(r2 + L * L);
  return std::clamp(std::exp(log_gamma), model.gamma_e(), model.gamma_c());
}

}  // namespace plcvlc::vlc

// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "cascade.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "specfun.hpp"

namespace plcvlc::cascade {

namespace {

// Below this point the PLC CDF is under 1e-300 and contributes nothing.
constexpr double kTailLevel = 1e-300;

class Integrator {
 public:
  Integrator(const MetricConfig& cfg, const plc::PlcModel& plc)
      : rule_(specfun::cached_gauss_legendre_rule(cfg.quad_order)),
        scheme_(cfg.scheme),
        plc_floor_(plc.lower_tail_point(kTailLevel)) {}

  /// Integral over [a, b] with a > 0.
  template <class F>
  double over(F&& f, double a, double b) const {
    if (scheme_ == QuadratureScheme::Affine) return specfun::integrate_affine(rule_, f, a, b);
    return specfun::integrate_graded(rule_, f, a, b);
  }

  /// Integral over [0, b] of an integrand carrying a PLC CDF or PDF factor.
  template <class F>
  double from_zero(F&& f, double b) const {
    if (scheme_ == QuadratureScheme::Affine || !(plc_floor_ > 0.0) || plc_floor_ >= b)
      return specfun::integrate_affine(rule_, f, 0.0, b);
    return specfun::integrate_affine(rule_, f, 0.0, plc_floor_) +
           specfun::integrate_graded(rule_, f, plc_floor_, b);
  }

 private:
  const specfun::QuadratureRule& rule_;
  QuadratureScheme scheme_;
  double plc_floor_;
};

}  // namespace

void ModulationParams::validate() const {
  require(p_mod > 0.0 && std::isfinite(p_mod), ErrorKind::Validation,
          "cascade.p_mod must be > 0, got " + std::to_string(p_mod));
  require(q_mod > 0.0 && std::isfinite(q_mod), ErrorKind::Validation,
          "cascade.q_mod must be > 0, got " + std::to_string(q_mod));
}

void MetricConfig::validate() const {
  require(quad_order >= 8 && quad_order <= 256, ErrorKind::Validation,
          "cascade.quad_order must lie in [8, 256], got " + std::to_string(quad_order));
  require(gamma_th > 0.0 && std::isfinite(gamma_th), ErrorKind::Validation,
          "outage threshold must be positive");
}

double end_to_end_cdf(double gamma, const CascadeModel& model) {
  if (gamma > model.vlc.gamma_c()) return 1.0;
  const double fp = model.plc.cdf(gamma);
  if (gamma < model.vlc.gamma_e()) return fp;
  const double fv = vlc::vlc_cdf_max(gamma, model.vlc);
  return fp + fv - fp * fv;
}

double end_to_end_pdf(double gamma, const CascadeModel& model) {
  if (gamma > model.vlc.gamma_c() || !(gamma > 0.0)) return 0.0;
  const double fp = model.plc.pdf(gamma);
  if (gamma < model.vlc.gamma_e()) return fp;
  const double Fp = model.plc.cdf(gamma);
  const double fv = vlc::vlc_pdf_max(gamma, model.vlc);
  const double Fv = vlc::vlc_cdf_max(gamma, model.vlc);
  return fp * (1.0 - Fv) + fv * (1.0 - Fp);
}

double outage_probability(const CascadeModel& model, double gamma_th) {
  require(gamma_th > 0.0, ErrorKind::Domain, "outage threshold must be positive");
  return end_to_end_cdf(gamma_th, model);
}

BepTerms average_bep_terms(const CascadeModel& model, const ModulationParams& mod,
                           const MetricConfig& cfg) {
  mod.validate();
  cfg.validate();
  const double p = mod.p_mod;
  const double q = mod.q_mod;
  const auto& plc = model.plc;
  const auto& vlc = model.vlc;
  const double ge = vlc.gamma_e();
  const double gc = vlc.gamma_c();
  const double k = vlc.inv_order();
  const Integrator integ(cfg, plc);

  BepTerms t;
  // I1: gamma^(p-1) e^(-q gamma) F_PLC over [0, gamma_c].
  t.i1 = integ.from_zero(
      [&](double x) { return std::exp((p - 1.0) * std::log(x) - q * x) * plc.cdf(x); }, gc);

  // I2 and I3 share the binomial coefficients of the VLC-max CDF.
  for (int i = 0; i <= vlc.num_leds(); ++i) {
    const double coeff = vlc.cdf_term_coeff(i);
    const double power = p - 1.0 - i * k;
    const double with_plc = integ.over(
        [&](double x) { return std::exp(power * std::log(x) - q * x) * plc.cdf(x); }, ge, gc);
    const double bare =
        integ.over([&](double x) { return std::exp(power * std::log(x) - q * x); }, ge, gc);
    t.i2 += coeff * with_plc;
    t.i3 += coeff * bare;
  }

  t.i4 = specfun::upper_incomplete_gamma(p, q * gc) / std::pow(q, p);
  t.value = (t.i1 - t.i2 + t.i3 + t.i4) / (2.0 * std::pow(q, -p) * std::tgamma(p));
  require(std::isfinite(t.value), ErrorKind::Numerical, "average BEP evaluated to a non-finite value");
  return t;
}

double average_bep(const CascadeModel& model, const ModulationParams& mod,
                   const MetricConfig& cfg) {
  return average_bep_terms(model, mod, cfg).value;
}

CapacityTerms ergodic_capacity_terms(const CascadeModel& model, const MetricConfig& cfg) {
  cfg.validate();
  const auto& plc = model.plc;
  const auto& vlc = model.vlc;
  const double ge = vlc.gamma_e();
  const double gc = vlc.gamma_c();
  const double k = vlc.inv_order();
  const double inv_ln2 = 1.0 / std::numbers::ln2;
  const Integrator integ(cfg, plc);

  CapacityTerms t;
  t.c1 = inv_ln2 * integ.from_zero([&](double x) { return std::log1p(x) * plc.pdf(x); }, gc);

  for (int i = 0; i <= vlc.num_leds() - 1; ++i) {
    const double coeff = vlc.pdf_term_coeff(i) * vlc.num_leds() * k;
    const double power = -(1.0 + (i + 1) * k);  // -(m + 4 + i)/(m + 3)
    const double i6 = integ.over(
        [&](double x) { return std::log1p(x) * std::exp(power * std::log(x)); }, ge, gc);
    const double i7 = integ.over(
        [&](double x) { return std::log1p(x) * std::exp(power * std::log(x)) * plc.cdf(x); }, ge,
        gc);
    t.c2_vlc += inv_ln2 * coeff * i6;
    t.c2_joint += inv_ln2 * coeff * i7;
  }

  for (int i = 0; i <= vlc.num_leds(); ++i) {
    const double coeff = vlc.cdf_term_coeff(i);
    const double i8 = integ.over(
        [&](double x) { return std::log1p(x) * std::exp(-i * k * std::log(x)) * plc.pdf(x); }, ge,
        gc);
    t.c3 += inv_ln2 * coeff * i8;
  }

  t.value = t.c1 + t.c2() - t.c3;
  require(std::isfinite(t.value), ErrorKind::Numerical,
          "ergodic capacity evaluated to a non-finite value");
  return t;
}

double ergodic_capacity(const CascadeModel& model, const MetricConfig& cfg) {
  return ergodic_capacity_terms(model, cfg).value;
}

}  // namespace plcvlc::cascade

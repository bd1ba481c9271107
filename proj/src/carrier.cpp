#include "degpd/carrier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "degpd/special.hpp"

namespace degpd {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

Carrier::Carrier(CarrierKind kind_, double omega_) : kind(kind_), omega(omega_) {
  if (kind == CarrierKind::TruncBetaM3 && !(omega > 0.0 && omega < 0.5))
    throw std::domain_error("Carrier: omega must lie in (0, 1/2) for the truncated beta");
}

CarrierParams::CarrierParams(double kappa_) : kappa(kappa_) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::domain_error("CarrierParams: kappa must be positive and finite");
}

CarrierEvaluator::CarrierEvaluator(const Carrier& carrier, const CarrierParams& params)
    : kind_(carrier.kind), omega_(carrier.omega), kappa_(params.kappa) {
  switch (kind_) {
    case CarrierKind::PowerM1:
      break;
    case CarrierKind::TruncNormalM2:
      if (kappa_ >= kM2KappaFloor) {
        sqrt_kappa_ = std::sqrt(kappa_);
        erf_scale_ = std::erf(sqrt_kappa_ / kSqrt2);
        upper_tail_ = 0.5 * std::erfc(sqrt_kappa_ / kSqrt2);
      }
      break;
    case CarrierKind::TruncBetaM3:
      i_omega_ = reg_inc_beta(omega_, kappa_, kappa_);
      // I_{1/2}(kappa, kappa) = 1/2 by symmetry.
      norm_ = 0.5 - i_omega_;
      break;
  }
}

double CarrierEvaluator::cdf(double u) const {
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  switch (kind_) {
    case CarrierKind::PowerM1:
      return std::pow(u, kappa_);
    case CarrierKind::TruncNormalM2: {
      if (kappa_ < kM2KappaFloor) return u;  // analytic kappa -> 0 limit
      // erf form so both endpoints evaluate exactly:
      //   G(u) = [erf(s(u-1)/sqrt2) + erf(s/sqrt2)] / erf(s/sqrt2).
      return clamp01(
          (std::erf(sqrt_kappa_ * (u - 1.0) / kSqrt2) + erf_scale_) / erf_scale_);
    }
    case CarrierKind::TruncBetaM3: {
      const double x = (0.5 - omega_) * u + omega_;
      return clamp01((reg_inc_beta(x, kappa_, kappa_) - i_omega_) / norm_);
    }
  }
  throw std::logic_error("CarrierEvaluator::cdf: unknown carrier kind");
}

double CarrierEvaluator::quantile(double p) const {
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  switch (kind_) {
    case CarrierKind::PowerM1:
      return std::pow(p, 1.0 / kappa_);
    case CarrierKind::TruncNormalM2: {
      if (kappa_ < kM2KappaFloor) return p;
      const double target = 0.5 * p * erf_scale_ + upper_tail_;
      return clamp01(1.0 + std_normal_quantile(target) / sqrt_kappa_);
    }
    case CarrierKind::TruncBetaM3: {
      const double x = reg_inc_beta_inverse(p * norm_ + i_omega_, kappa_, kappa_);
      return clamp01((x - omega_) / (0.5 - omega_));
    }
  }
  throw std::logic_error("CarrierEvaluator::quantile: unknown carrier kind");
}

double carrier_cdf(double u, const Carrier& carrier, const CarrierParams& params) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("carrier_cdf: u outside [0,1]");
  return CarrierEvaluator(carrier, params).cdf(u);
}

double carrier_quantile(double p, const Carrier& carrier, const CarrierParams& params) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("carrier_quantile: p outside [0,1]");
  return CarrierEvaluator(carrier, params).quantile(p);
}

double carrier_density(double u, const Carrier& carrier, const CarrierParams& params) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("carrier_density: u outside (0,1)");
  switch (carrier.kind) {
    case CarrierKind::PowerM1:
      return params.kappa * std::pow(u, params.kappa - 1.0);
    case CarrierKind::TruncNormalM2: {
      if (params.kappa < kM2KappaFloor) return 1.0;
      const double s = std::sqrt(params.kappa);
      return 2.0 * s * std_normal_pdf(s * (u - 1.0)) / std::erf(s / kSqrt2);
    }
    case CarrierKind::TruncBetaM3: {
      const double x = (0.5 - carrier.omega) * u + carrier.omega;
      const double log_pdf = (params.kappa - 1.0) * (std::log(x) + std::log1p(-x)) -
                             log_beta(params.kappa, params.kappa);
      const double norm = 0.5 - reg_inc_beta(carrier.omega, params.kappa, params.kappa);
      return (0.5 - carrier.omega) * std::exp(log_pdf) / norm;
    }
  }
  throw std::logic_error("carrier_density: unknown carrier kind");
}

}  // namespace degpd

#include "degpd/gpd.hpp"

#include <cmath>
#include <stdexcept>

namespace degpd {

GpdParams::GpdParams(double beta_, double xi_) : beta(beta_), xi(xi_) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::domain_error("GpdParams: scale beta must be positive and finite");
  if (!(xi >= 0.0) || !std::isfinite(xi))
    throw std::domain_error("GpdParams: shape xi must be >= 0 and finite");
}

double gpd_cdf(double z, const GpdParams& params) {
  if (!(z >= 0.0)) throw std::domain_error("gpd_cdf: z must be >= 0");
  if (params.xi > kGpdXiBranch) {
    return -std::expm1(-std::log1p(params.xi * z / params.beta) / params.xi);
  }
  return -std::expm1(-z / params.beta);
}

double gpd_quantile(double p, const GpdParams& params) {
  if (!(p >= 0.0 && p < 1.0))
    throw std::domain_error("gpd_quantile: p must lie in [0,1)");
  if (p == 0.0) return 0.0;
  if (params.xi > kGpdXiBranch) {
    return params.beta / params.xi * std::expm1(-params.xi * std::log1p(-p));
  }
  return -params.beta * std::log1p(-p);
}

}  // namespace degpd

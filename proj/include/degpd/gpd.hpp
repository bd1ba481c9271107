#pragma once

namespace degpd {

// Continuous generalized Pareto layer. Only the xi >= 0 regime is supported;
// the discrete construction on top of it requires a nonnegative shape.
struct GpdParams {
  double beta;  // scale, > 0
  double xi;    // shape, >= 0

  GpdParams(double beta_, double xi_);
};

// Shape values at or below this are evaluated on the exponential branch.
inline constexpr double kGpdXiBranch = 1e-6;

// F(z) = 1 - (1 + xi z / beta)^(-1/xi), exponential form as xi -> 0.
double gpd_cdf(double z, const GpdParams& params);

// Inverse of gpd_cdf on [0,1); p = 1 is rejected (infinite quantile).
double gpd_quantile(double p, const GpdParams& params);

}  // namespace degpd

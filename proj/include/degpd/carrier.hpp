#pragma once

namespace degpd {

// Carrier family on [0,1] composed with the GPD CDF: power law (M1),
// truncated normal with precision kappa (M2), truncated beta on
// (omega, 1/2) rescaled to the unit interval (M3).
enum class CarrierKind { PowerM1, TruncNormalM2, TruncBetaM3 };

struct Carrier {
  CarrierKind kind = CarrierKind::PowerM1;
  double omega = 1.0 / 32.0;  // M3 only; fixed model constant, never estimated

  Carrier() = default;
  Carrier(CarrierKind kind_, double omega_ = 1.0 / 32.0);
};

struct CarrierParams {
  double kappa;  // > 0; the M2 kappa -> 0 limit is a numerical regime

  explicit CarrierParams(double kappa_);
};

// Below this kappa the M2 closed form is 0/0-degenerate; its analytic
// limits (identity CDF, unit density) are used instead.
inline constexpr double kM2KappaFloor = 1e-6;

double carrier_cdf(double u, const Carrier& carrier, const CarrierParams& params);
double carrier_quantile(double p, const Carrier& carrier, const CarrierParams& params);

// Diagnostics only; the discrete pmfs difference the CDF and never need this.
double carrier_density(double u, const Carrier& carrier, const CarrierParams& params);

// Caches the per-(carrier, kappa) constants (M3's incomplete-beta normalizer,
// M2's erf scale) so tight loops pay one special-function call per point.
class CarrierEvaluator {
 public:
  CarrierEvaluator(const Carrier& carrier, const CarrierParams& params);
  double cdf(double u) const;
  double quantile(double p) const;

 private:
  CarrierKind kind_;
  double omega_ = 1.0 / 32.0;
  double kappa_ = 1.0;
  double sqrt_kappa_ = 0.0;     // M2
  double erf_scale_ = 0.0;      // M2: erf(sqrt(kappa)/sqrt(2))
  double upper_tail_ = 0.0;     // M2: 1 - Phi(sqrt(kappa))
  double i_omega_ = 0.0;        // M3: I_omega(kappa, kappa)
  double norm_ = 0.0;           // M3: 1/2 - I_omega
};

}  // namespace degpd

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degpd/carrier.hpp"
#include "degpd/gpd.hpp"

namespace degpd {

enum class Family { DGPD, DEGPD, ZIDEGPD };

// Family plus (for the extended families) the carrier choice. DGPD carries
// no carrier; construction enforces that.
struct ModelSpec {
  Family family = Family::DEGPD;
  std::optional<Carrier> carrier;

  static ModelSpec dgpd();
  static ModelSpec degpd(CarrierKind kind, double omega = 1.0 / 32.0);
  static ModelSpec zidegpd(CarrierKind kind, double omega = 1.0 / 32.0);

  // Selector string: dgpd, degpd-m1|m2|m3, zidegpd-m1|m2|m3.
  std::string name() const;
  static ModelSpec parse(const std::string& name, double omega = 1.0 / 32.0);

  int free_parameter_count() const;  // 2 / 3 / 4
  std::vector<std::string> parameter_names() const;
};

// Parameter vector with family-dependent slots. Fields a family does not use
// must be absent; validate_for() rejects mismatches instead of ignoring them.
struct ParamVector {
  std::optional<double> pi;     // ZIDEGPD only, in [0,1]
  std::optional<double> kappa;  // DEGPD/ZIDEGPD only, > 0
  double beta = 1.0;            // > 0
  double xi = 0.0;              // >= 0

  static ParamVector for_dgpd(double beta, double xi);
  static ParamVector for_degpd(double kappa, double beta, double xi);
  static ParamVector for_zidegpd(double pi, double kappa, double beta, double xi);

  void validate_for(const ModelSpec& spec) const;
  double value_of(const std::string& parameter_name) const;
};

double pmf(std::int64_t y, const ModelSpec& spec, const ParamVector& params);
double cdf(std::int64_t y, const ModelSpec& spec, const ParamVector& params);

// Validates (spec, params) once and then evaluates pmf/cdf/quantile without
// the per-call checks; the workhorse behind likelihoods, mass sums, and
// sampling loops.
class PmfEvaluator {
 public:
  PmfEvaluator(const ModelSpec& spec, const ParamVector& params);
  double pmf(std::int64_t y) const;
  double cdf(std::int64_t y) const;
  std::int64_t quantile(double p) const;
  // G(F(y)) continued to real arguments; pmf(y) = step between y and y+1.
  double transformed_cdf(double y) const;

 private:
  Family family_;
  std::optional<CarrierEvaluator> carrier_;
  GpdParams gpd_;
  double pi_ = 0.0;
};

// Exact tail mass 1 - cdf(y); lets normalization checks avoid infinite sums.
double tail_survival_bound(std::int64_t y, const ModelSpec& spec,
                           const ParamVector& params);

// Smallest y with cdf(y) >= p. Closed form from the inverted carrier/GPD
// composition, then verified against the CDF and nudged if ceiling
// arithmetic landed one off.
std::int64_t quantile(double p, const ModelSpec& spec, const ParamVector& params);

// Inverse-transform sampling; deterministic given seed.
std::vector<std::int64_t> sample(std::int64_t n, const ModelSpec& spec,
                                 const ParamVector& params, std::uint64_t seed);

// Sum of pmf over y in [0, y_max], chunked Kahan sums merged in index order:
// the result is identical for every job count. The serial reference is the
// plain pmf loop exercised in tests.
double pmf_mass(const ModelSpec& spec, const ParamVector& params,
                std::int64_t y_max, int jobs = 0);

}  // namespace degpd

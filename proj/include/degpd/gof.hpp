#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "degpd/data.hpp"
#include "degpd/inference.hpp"
#include "degpd/models.hpp"

namespace degpd {

// Discrete Kolmogorov-Smirnov distance: sup over the observed support of
// |empirical CDF - model CDF|, both right-continuous at the integers.
double ks_statistic(const CountSample& data, const ModelSpec& spec,
                    const ParamVector& params);

struct KsMcResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int replicates = 0;  // requested B
  int used = 0;        // replicates whose refit converged
  int failures = 0;
  FitResult fit;  // the point fit the test was run against
};

// Parametric-bootstrap KS test: fit, then B times simulate n observations
// from the fitted model, refit, and recompute the statistic. The p-value is
// (1 + #{D* >= D}) / (used + 1), never exactly zero. Deterministic given
// seed; replicates run in parallel. More than 20% refit failures aborts.
KsMcResult ks_test_mc(const CountSample& data, const ModelSpec& spec, int replicates,
                      std::uint64_t seed, int jobs = 0,
                      const FitOptions& fit_options = {},
                      const std::optional<FitResult>& point_fit = std::nullopt);

// Q-Q pairs: i-th order statistic against quantile((i - 0.5) / n), sorted.
std::vector<std::pair<std::int64_t, std::int64_t>> qq_data(
    const CountSample& data, const ModelSpec& spec, const ParamVector& params);

// m-observation return levels: quantile(1 - 1/m) per m; m must exceed 1.
std::vector<std::pair<double, std::int64_t>> return_levels(
    const ModelSpec& spec, const ParamVector& params, const std::vector<double>& m_grid);

}  // namespace degpd

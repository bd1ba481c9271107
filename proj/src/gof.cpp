#include "degpd/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "degpd/parallel.hpp"
#include "degpd/rng.hpp"

namespace degpd {

double ks_statistic(const CountSample& data, const ModelSpec& spec,
                    const ParamVector& params) {
  if (data.empty()) throw std::invalid_argument("ks_statistic: empty data");
  const PmfEvaluator eval(spec, params);
  const double n = static_cast<double>(data.size());
  double d = 0.0;
  std::int64_t cumulative = 0;
  for (const auto& [y, count] : data.frequencies()) {
    cumulative += count;
    const double empirical = static_cast<double>(cumulative) / n;
    d = std::max(d, std::fabs(empirical - eval.cdf(y)));
  }
  return d;
}

KsMcResult ks_test_mc(const CountSample& data, const ModelSpec& spec, int replicates,
                      std::uint64_t seed, int jobs, const FitOptions& fit_options,
                      const std::optional<FitResult>& point_fit) {
  if (replicates < 99) throw std::invalid_argument("ks_test_mc: need B >= 99");
  KsMcResult result;
  result.replicates = replicates;
  result.fit = point_fit.value_or(FitResult{});
  if (!point_fit) result.fit = fit_mle(data, spec, std::nullopt, fit_options);
  result.statistic = ks_statistic(data, spec, result.fit.estimates);

  const std::int64_t n = data.size();
  std::vector<double> replicate_d(static_cast<std::size_t>(replicates),
                                  std::numeric_limits<double>::quiet_NaN());
  std::vector<char> failed(static_cast<std::size_t>(replicates), 0);
  par::for_index(replicates, jobs, [&](std::int64_t b) {
    const auto replicate_seed = derive_seed(seed, static_cast<std::uint64_t>(b));
    const CountSample simulated(sample(n, spec, result.fit.estimates, replicate_seed));
    try {
      const FitResult refit = fit_mle(simulated, spec, result.fit.estimates, fit_options);
      replicate_d[static_cast<std::size_t>(b)] =
          ks_statistic(simulated, spec, refit.estimates);
    } catch (const FitNonConvergence&) {
      failed[static_cast<std::size_t>(b)] = 1;
    }
  });

  for (std::size_t b = 0; b < failed.size(); ++b) {
    if (failed[b]) {
      ++result.failures;
    } else {
      ++result.used;
    }
  }
  if (static_cast<double>(result.failures) > 0.2 * replicates) {
    std::ostringstream msg;
    msg << "ks_test_mc: " << result.failures << " of " << replicates
        << " replicate refits failed to converge";
    throw std::runtime_error(msg.str());
  }

  int at_least_as_extreme = 0;
  for (std::size_t b = 0; b < replicate_d.size(); ++b)
    if (!failed[b] && replicate_d[b] >= result.statistic) ++at_least_as_extreme;
  result.p_value =
      (1.0 + at_least_as_extreme) / (static_cast<double>(result.used) + 1.0);
  return result;
}

std::vector<std::pair<std::int64_t, std::int64_t>> qq_data(
    const CountSample& data, const ModelSpec& spec, const ParamVector& params) {
  if (data.empty()) throw std::invalid_argument("qq_data: empty data");
  const double n = static_cast<double>(data.size());
  std::vector<std::pair<std::int64_t, std::int64_t>> points;
  points.reserve(static_cast<std::size_t>(data.size()));
  std::int64_t i = 0;
  for (const auto& [y, count] : data.frequencies()) {
    for (std::int64_t r = 0; r < count; ++r) {
      ++i;
      const double position = (static_cast<double>(i) - 0.5) / n;
      points.emplace_back(y, quantile(position, spec, params));
    }
  }
  return points;
}

std::vector<std::pair<double, std::int64_t>> return_levels(
    const ModelSpec& spec, const ParamVector& params,
    const std::vector<double>& m_grid) {
  std::vector<std::pair<double, std::int64_t>> levels;
  levels.reserve(m_grid.size());
  for (const double m : m_grid) {
    if (!(m > 1.0)) throw std::domain_error("return_levels: m must exceed 1");
    levels.emplace_back(m, quantile(1.0 - 1.0 / m, spec, params));
  }
  return levels;
}

}  // namespace degpd

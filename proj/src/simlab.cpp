#include "degpd/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "degpd/format.hpp"
#include "degpd/parallel.hpp"
#include "degpd/rng.hpp"

namespace degpd {
namespace {

double percentile_sorted(const std::vector<double>& sorted, double q) {
  const double h = q * (static_cast<double>(sorted.size()) - 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double w = h - std::floor(h);
  return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

// Estimates from one fit as study rows, flagged by the convergence outcome.
void append_rows(std::vector<StudyRow>& rows, const std::string& study,
                 const ModelSpec& spec, std::optional<std::int64_t> threshold,
                 std::int64_t replicate, const ParamVector& estimates,
                 bool converged) {
  for (const auto& name : spec.parameter_names()) {
    StudyRow row;
    row.study = study;
    row.model = spec.name();
    row.threshold = threshold;
    row.replicate = replicate;
    row.parameter = name;
    row.estimate = estimates.value_of(name);
    row.converged = converged;
    rows.push_back(std::move(row));
  }
}

}  // namespace

std::vector<CellSummary> summarize_cells(const std::vector<StudyRow>& rows) {
  using Key = std::tuple<std::string, std::optional<std::int64_t>, std::string>;
  std::map<Key, std::vector<double>> cells;
  std::map<Key, std::int64_t> flagged;
  for (const auto& row : rows) {
    const Key key{row.model, row.threshold, row.parameter};
    if (row.converged) {
      cells[key].push_back(row.estimate);
    } else {
      ++flagged[key];
      cells.try_emplace(key);
    }
  }
  std::vector<CellSummary> summaries;
  for (auto& [key, estimates] : cells) {
    CellSummary cell;
    cell.model = std::get<0>(key);
    cell.threshold = std::get<1>(key);
    cell.parameter = std::get<2>(key);
    cell.fitted = static_cast<std::int64_t>(estimates.size());
    const auto it = flagged.find(key);
    cell.skipped = it == flagged.end() ? 0 : it->second;
    if (!estimates.empty()) {
      std::sort(estimates.begin(), estimates.end());
      cell.median = percentile_sorted(estimates, 0.5);
      cell.q1 = percentile_sorted(estimates, 0.25);
      cell.q3 = percentile_sorted(estimates, 0.75);
    }
    summaries.push_back(std::move(cell));
  }
  return summaries;
}

std::string study_rows_to_csv(const std::vector<StudyRow>& rows) {
  std::string out = "study,model,threshold,replicate,parameter,estimate,converged\n";
  for (const auto& row : rows) {
    out += row.study;
    out += ',';
    out += row.model;
    out += ',';
    if (row.threshold) out += std::to_string(*row.threshold);
    out += ',';
    out += std::to_string(row.replicate);
    out += ',';
    out += row.parameter;
    out += ',';
    out += double_to_string(row.estimate);
    out += ',';
    out += row.converged ? '1' : '0';
    out += '\n';
  }
  return out;
}

RecoveryResult run_recovery(const RecoveryConfig& config, int jobs) {
  if (config.replicates < 1)
    throw std::invalid_argument("run_recovery: replicates must be >= 1");
  if (config.n < 50) throw std::invalid_argument("run_recovery: n must be >= 50");
  config.truth.validate_for(config.spec);

  struct Slot {
    ParamVector estimates;
    bool converged = false;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(config.replicates));
  par::for_index(config.replicates, jobs, [&](std::int64_t r) {
    const auto replicate_seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));
    const CountSample data(sample(config.n, config.spec, config.truth, replicate_seed));
    auto& slot = slots[static_cast<std::size_t>(r)];
    try {
      const FitResult fit =
          fit_mle(data, config.spec, std::nullopt, config.fit_options);
      slot.estimates = fit.estimates;
      slot.converged = true;
    } catch (const FitNonConvergence& failure) {
      slot.estimates = failure.best.estimates;
      slot.converged = false;
    }
  });

  RecoveryResult result;
  for (std::int64_t r = 0; r < config.replicates; ++r) {
    const auto& slot = slots[static_cast<std::size_t>(r)];
    append_rows(result.rows, "recovery", config.spec, std::nullopt, r, slot.estimates,
                slot.converged);
  }
  result.summaries = summarize_cells(result.rows);
  return result;
}

DiscreteGevSample sample_discrete_gev(std::int64_t n, double mu, double beta,
                                      double xi, std::uint64_t seed) {
  if (!(beta > 0.0)) throw std::invalid_argument("sample_discrete_gev: beta must be > 0");
  if (!(xi >= 0.0)) throw std::invalid_argument("sample_discrete_gev: xi must be >= 0");
  if (n < 1) throw std::invalid_argument("sample_discrete_gev: n must be >= 1");

  Rng rng(seed);
  DiscreteGevSample result;
  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(n));
  while (static_cast<std::int64_t>(values.size()) < n) {
    const double u = rng.uniform01();
    const double gumbel = -std::log(-std::log(u));
    const double x = xi > kGpdXiBranch
                         ? mu + beta / xi * std::expm1(xi * gumbel)
                         : mu + beta * gumbel;
    ++result.draws;
    const double floored = std::floor(x);
    if (floored < 0.0) {
      ++result.rejections;
      // A mostly-negative generator means the location/scale make no sense
      // for count data.
      if (result.draws >= 1000 && 2 * result.rejections > result.draws)
        throw std::runtime_error(
            "sample_discrete_gev: rejection rate exceeds 50%; "
            "configuration yields mostly negative values");
      continue;
    }
    values.push_back(static_cast<std::int64_t>(floored));
  }
  result.counts = CountSample(values);
  return result;
}

SweepResult run_threshold_sweep(const SweepConfig& config, int jobs) {
  if (config.replicates < 1)
    throw std::invalid_argument("run_threshold_sweep: replicates must be >= 1");
  if (config.models.empty())
    throw std::invalid_argument("run_threshold_sweep: no models given");
  for (std::size_t i = 0; i + 1 < config.thresholds.size(); ++i)
    if (config.thresholds[i] >= config.thresholds[i + 1])
      throw std::invalid_argument(
          "run_threshold_sweep: thresholds must be strictly increasing");
  for (const auto& threshold : config.thresholds)
    if (threshold < 0)
      throw std::invalid_argument("run_threshold_sweep: thresholds must be >= 0");

  const std::size_t models = config.models.size();
  const std::size_t cells_per_rep = config.thresholds.size() * models;
  struct Cell {
    ParamVector estimates;
    bool converged = false;
    bool skipped = true;
  };
  std::vector<Cell> cells(static_cast<std::size_t>(config.replicates) * cells_per_rep);
  std::vector<std::int64_t> rejections(static_cast<std::size_t>(config.replicates), 0);
  std::vector<std::int64_t> draws(static_cast<std::size_t>(config.replicates), 0);

  par::for_index(config.replicates, jobs, [&](std::int64_t r) {
    const auto replicate_seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));
    const DiscreteGevSample gev = sample_discrete_gev(
        config.n, config.gev_mu, config.gev_beta, config.gev_xi, replicate_seed);
    rejections[static_cast<std::size_t>(r)] = gev.rejections;
    draws[static_cast<std::size_t>(r)] = gev.draws;
    for (std::size_t t = 0; t < config.thresholds.size(); ++t) {
      std::optional<CountSample> exceedances;
      std::int64_t available = 0;
      for (const auto& [value, count] : gev.counts.frequencies())
        if (value >= config.thresholds[t]) available += count;
      if (available >= config.min_exceedances)
        exceedances = gev.counts.exceedances_above(config.thresholds[t]);
      for (std::size_t m = 0; m < models; ++m) {
        auto& cell = cells[static_cast<std::size_t>(r) * cells_per_rep +
                           t * models + m];
        if (!exceedances) continue;  // flagged: too few exceedances
        cell.skipped = false;
        try {
          const FitResult fit = fit_mle(*exceedances, config.models[m], std::nullopt,
                                        config.fit_options);
          cell.estimates = fit.estimates;
          cell.converged = true;
        } catch (const FitNonConvergence& failure) {
          cell.estimates = failure.best.estimates;
          cell.converged = false;
        }
      }
    }
  });

  SweepResult result;
  for (std::int64_t r = 0; r < config.replicates; ++r) {
    result.gev_rejections += rejections[static_cast<std::size_t>(r)];
    result.gev_draws += draws[static_cast<std::size_t>(r)];
    for (std::size_t t = 0; t < config.thresholds.size(); ++t) {
      for (std::size_t m = 0; m < models; ++m) {
        const auto& cell =
            cells[static_cast<std::size_t>(r) * cells_per_rep + t * models + m];
        if (cell.skipped) {
          ++result.skipped_cells;
          continue;
        }
        append_rows(result.rows, "sweep", config.models[m], config.thresholds[t], r,
                    cell.estimates, cell.converged);
      }
    }
  }
  result.summaries = summarize_cells(result.rows);
  return result;
}

}  // namespace degpd

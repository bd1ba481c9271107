#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degpd/data.hpp"
#include "degpd/inference.hpp"
#include "degpd/models.hpp"

namespace degpd {

// One long-format result line of a simulation study.
struct StudyRow {
  std::string study;
  std::string model;
  std::optional<std::int64_t> threshold;
  std::int64_t replicate = 0;
  std::string parameter;
  double estimate = 0.0;
  bool converged = false;
};

// Median/quartile summary of one (model, threshold, parameter) cell.
struct CellSummary {
  std::string model;
  std::optional<std::int64_t> threshold;
  std::string parameter;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  std::int64_t fitted = 0;
  std::int64_t skipped = 0;
};

std::vector<CellSummary> summarize_cells(const std::vector<StudyRow>& rows);
std::string study_rows_to_csv(const std::vector<StudyRow>& rows);

// Repeated simulate-then-fit experiment at a known truth.
struct RecoveryConfig {
  ModelSpec spec;
  ParamVector truth;
  std::int64_t n = 1000;
  std::int64_t replicates = 200;
  std::uint64_t seed = 0;
  FitOptions fit_options;
};

struct RecoveryResult {
  std::vector<StudyRow> rows;
  std::vector<CellSummary> summaries;
};

// Fit failures become flagged rows (converged = 0); the study never aborts.
RecoveryResult run_recovery(const RecoveryConfig& config, int jobs = 0);

// Floor-discretized GEV draws, negative values rejected and redrawn.
struct DiscreteGevSample {
  CountSample counts;
  std::int64_t rejections = 0;
  std::int64_t draws = 0;
};

DiscreteGevSample sample_discrete_gev(std::int64_t n, double mu, double beta,
                                      double xi, std::uint64_t seed);

// Tail-stability sweep: per replicate one heavy-tailed sample, per threshold
// the exceedances, per model a fit.
struct SweepConfig {
  double gev_mu = 2.0;
  double gev_beta = 1.0;
  double gev_xi = 0.05;
  std::vector<std::int64_t> thresholds;  // strictly increasing
  std::int64_t n = 2000;
  std::int64_t replicates = 100;
  std::vector<ModelSpec> models;
  std::uint64_t seed = 0;
  std::int64_t min_exceedances = 30;  // smaller cells are flagged and skipped
  FitOptions fit_options;
};

struct SweepResult {
  std::vector<StudyRow> rows;
  std::vector<CellSummary> summaries;
  std::int64_t skipped_cells = 0;
  std::int64_t gev_rejections = 0;
  std::int64_t gev_draws = 0;
};

SweepResult run_threshold_sweep(const SweepConfig& config, int jobs = 0);

}  // namespace degpd

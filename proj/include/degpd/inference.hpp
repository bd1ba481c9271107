#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "degpd/data.hpp"
#include "degpd/models.hpp"

namespace degpd {

struct FitOptions {
  int starts = 5;            // multi-start count for the simplex
  int max_iterations = 2000; // per start
  double function_tolerance = 1e-8;
  double point_tolerance = 1e-8;
};

struct FitResult {
  ModelSpec spec;
  ParamVector estimates;
  double loglik = 0.0;
  double bic = 0.0;
  bool converged = false;
  int iterations = 0;  // simplex iterations summed over starts
  std::int64_t n = 0;
  std::uint64_t data_fingerprint = 0;
  std::optional<std::int64_t> threshold;  // set when fit to exceedances
  std::map<std::string, std::pair<double, double>> boot_bands;
  std::vector<std::string> warnings;
};

// Thrown when no simplex start satisfied the convergence tolerances; the
// best incumbent is attached so studies can record a flagged row.
struct FitNonConvergence : std::runtime_error {
  explicit FitNonConvergence(FitResult best_so_far)
      : std::runtime_error("fit_mle: no start converged (best loglik " +
                           std::to_string(best_so_far.loglik) + ")"),
        best(std::move(best_so_far)) {}
  FitResult best;
};

// Sum over the frequency table of count(y) * log pmf(y). pmf values below
// 1e-300 contribute log(1e-300) so the optimizer sees a finite surface.
double log_likelihood(const CountSample& data, const ModelSpec& spec,
                      const ParamVector& params);

// Maps between the constrained parameter space and the unconstrained
// optimizer space (log kappa, log beta, softplus for xi, logit pi).
std::vector<double> to_unconstrained(const ModelSpec& spec, const ParamVector& params);
ParamVector to_constrained(const ModelSpec& spec, const std::vector<double>& t);

// Maximum-likelihood fit via multi-start Nelder-Mead on the unconstrained
// space. `init`, when given, replaces the heuristic first start.
FitResult fit_mle(const CountSample& data, const ModelSpec& spec,
                  const std::optional<ParamVector>& init = std::nullopt,
                  const FitOptions& options = {});

// Nonparametric bootstrap percentile bands. Replicates run in parallel with
// per-index seeds; more than 20% refit failures aborts with diagnostics.
std::map<std::string, std::pair<double, double>> bootstrap_bands(
    const CountSample& data, const ModelSpec& spec, const FitResult& fit,
    int replicates, double level, std::uint64_t seed, int jobs = 0,
    const FitOptions& refit_options = {});

// Indices of `fits` in ascending BIC order; ties resolved by fewer free
// parameters, then by model name. All fits must come from the same data.
std::vector<std::size_t> compare_bic(const std::vector<FitResult>& fits);

// Resample `n` observations with replacement (used by bootstrap and tests).
CountSample resample_with_replacement(const CountSample& data, std::uint64_t seed);

}  // namespace degpd

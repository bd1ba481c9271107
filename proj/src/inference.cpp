#include "degpd/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "degpd/nelder_mead.hpp"
#include "degpd/parallel.hpp"
#include "degpd/rng.hpp"

namespace degpd {
namespace {

constexpr double kPmfFloor = 1e-300;
// Fixed stream for the deterministic multi-start perturbations.
constexpr std::uint64_t kStartPerturbationSeed = 0x5eedf17ULL;

double softplus(double t) {
  if (t > 30.0) return t;
  if (t < -30.0) return std::exp(t);
  return std::log1p(std::exp(t));
}

double softplus_inverse(double x) {
  const double clipped = std::max(x, 1e-12);
  if (clipped > 30.0) return clipped;
  return std::log(std::expm1(clipped));
}

double logit(double p) {
  const double clipped = std::min(1.0 - 1e-12, std::max(1e-12, p));
  return std::log(clipped / (1.0 - clipped));
}

double inverse_logit(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

ParamVector heuristic_init(const CountSample& data, const ModelSpec& spec) {
  double beta0 = data.mean_of_positive();
  if (!(beta0 > 0.0)) beta0 = std::max(1.0, data.mean());
  const double xi0 = 0.1;
  const double kappa0 = 1.0;
  switch (spec.family) {
    case Family::DGPD:
      return ParamVector::for_dgpd(beta0, xi0);
    case Family::DEGPD:
      return ParamVector::for_degpd(kappa0, beta0, xi0);
    case Family::ZIDEGPD: {
      const double zero_mass_at_init =
          pmf(0, ModelSpec::degpd(spec.carrier->kind, spec.carrier->omega),
              ParamVector::for_degpd(kappa0, beta0, xi0));
      const double pi0 = std::min(
          0.95, std::max(0.01, data.zero_fraction() - zero_mass_at_init));
      return ParamVector::for_zidegpd(pi0, kappa0, beta0, xi0);
    }
  }
  throw std::logic_error("heuristic_init: unknown family");
}

}  // namespace

double log_likelihood(const CountSample& data, const ModelSpec& spec,
                      const ParamVector& params) {
  if (data.empty()) throw std::invalid_argument("log_likelihood: empty data");
  const PmfEvaluator eval(spec, params);
  const bool zero_inflated = spec.family == Family::ZIDEGPD;
  const double one_minus_pi = zero_inflated ? 1.0 - *params.pi : 1.0;
  // Adjacent support points share the CDF evaluation at their boundary.
  double total = 0.0;
  std::int64_t prev_y = -2;
  double prev_hi = 0.0;
  for (const auto& [y, count] : data.frequencies()) {
    const double hi = eval.transformed_cdf(static_cast<double>(y) + 1.0);
    double value;
    if (y == 0) {
      value = zero_inflated ? *params.pi + one_minus_pi * hi : hi;
    } else {
      const double lo =
          prev_y == y - 1 ? prev_hi : eval.transformed_cdf(static_cast<double>(y));
      value = one_minus_pi * std::max(0.0, hi - lo);
    }
    prev_y = y;
    prev_hi = hi;
    total += static_cast<double>(count) * std::log(std::max(value, kPmfFloor));
  }
  return total;
}

std::vector<double> to_unconstrained(const ModelSpec& spec, const ParamVector& params) {
  params.validate_for(spec);
  std::vector<double> t;
  if (spec.family == Family::ZIDEGPD) t.push_back(logit(*params.pi));
  if (spec.family != Family::DGPD) t.push_back(std::log(*params.kappa));
  t.push_back(std::log(params.beta));
  t.push_back(softplus_inverse(params.xi));
  return t;
}

ParamVector to_constrained(const ModelSpec& spec, const std::vector<double>& t) {
  if (static_cast<int>(t.size()) != spec.free_parameter_count())
    throw std::invalid_argument("to_constrained: wrong dimension");
  std::size_t i = 0;
  std::optional<double> pi, kappa;
  if (spec.family == Family::ZIDEGPD) pi = inverse_logit(t[i++]);
  if (spec.family != Family::DGPD) kappa = std::exp(t[i++]);
  const double beta = std::exp(t[i++]);
  const double xi = softplus(t[i++]);
  switch (spec.family) {
    case Family::DGPD: return ParamVector::for_dgpd(beta, xi);
    case Family::DEGPD: return ParamVector::for_degpd(*kappa, beta, xi);
    case Family::ZIDEGPD: return ParamVector::for_zidegpd(*pi, *kappa, beta, xi);
  }
  throw std::logic_error("to_constrained: unknown family");
}

FitResult fit_mle(const CountSample& data, const ModelSpec& spec,
                  const std::optional<ParamVector>& init, const FitOptions& options) {
  if (data.empty()) throw std::invalid_argument("fit_mle: empty data");
  FitResult result;
  result.spec = spec;
  result.n = data.size();
  result.data_fingerprint = data.fingerprint();
  if (spec.family == Family::ZIDEGPD && data.count_of_zero() == 0)
    result.warnings.push_back(
        "zero-inflated family fit to data containing no zeros; pi is weakly "
        "identified");

  const ParamVector start_params = init.value_or(heuristic_init(data, spec));
  const std::vector<double> t0 = to_unconstrained(spec, start_params);

  const auto objective = [&](const std::vector<double>& t) {
    const ParamVector candidate = to_constrained(spec, t);
    const bool usable = std::isfinite(candidate.beta) && candidate.beta > 0.0 &&
                        std::isfinite(candidate.xi) &&
                        (!candidate.kappa ||
                         (std::isfinite(*candidate.kappa) && *candidate.kappa > 0.0));
    if (!usable) return 1e300;  // overflowed off the feasible region
    return -log_likelihood(data, spec, candidate);
  };

  SimplexOptions nm;
  nm.max_iterations = options.max_iterations;
  nm.function_tolerance = options.function_tolerance;
  nm.point_tolerance = options.point_tolerance;

  bool have_best = false;
  SimplexResult best;
  Rng perturb(kStartPerturbationSeed);
  for (int start = 0; start < std::max(1, options.starts); ++start) {
    std::vector<double> t = t0;
    if (start > 0) {
      // Deterministic spread of starting points around the heuristic.
      for (auto& coord : t) coord += 2.0 * perturb.uniform01() - 1.0;
    }
    const SimplexResult run = nelder_mead(objective, t, nm);
    result.iterations += run.iterations;
    const bool better =
        !have_best || run.value < best.value ||
        (run.value == best.value && run.converged && !best.converged);
    if (better) {
      best = run;
      have_best = true;
    }
  }

  result.estimates = to_constrained(spec, best.point);
  result.loglik = -best.value;
  result.bic = -2.0 * result.loglik +
               spec.free_parameter_count() * std::log(static_cast<double>(data.size()));
  result.converged = best.converged;
  if (!best.converged) throw FitNonConvergence(result);
  return result;
}

CountSample resample_with_replacement(const CountSample& data, std::uint64_t seed) {
  const auto& freq = data.frequencies();
  std::vector<std::int64_t> cumulative;
  cumulative.reserve(freq.size());
  std::int64_t running = 0;
  for (const auto& [value, count] : freq) {
    running += count;
    cumulative.push_back(running);
  }
  Rng rng(seed);
  const std::int64_t n = data.size();
  std::vector<std::int64_t> draws(static_cast<std::size_t>(n));
  for (auto& out : draws) {
    const auto pick = static_cast<std::int64_t>(
        rng.below(static_cast<std::uint64_t>(n)));
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    out = freq[static_cast<std::size_t>(it - cumulative.begin())].first;
  }
  return CountSample(draws);
}

std::map<std::string, std::pair<double, double>> bootstrap_bands(
    const CountSample& data, const ModelSpec& spec, const FitResult& fit,
    int replicates, double level, std::uint64_t seed, int jobs,
    const FitOptions& refit_options) {
  if (!fit.converged)
    throw std::invalid_argument("bootstrap_bands: point fit did not converge");
  if (replicates < 100)
    throw std::invalid_argument("bootstrap_bands: need at least 100 replicates");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("bootstrap_bands: level must lie in (0,1)");

  const auto names = spec.parameter_names();
  std::vector<std::vector<double>> estimates(
      names.size(), std::vector<double>(static_cast<std::size_t>(replicates),
                                        std::numeric_limits<double>::quiet_NaN()));
  std::vector<char> failed(static_cast<std::size_t>(replicates), 0);

  par::for_index(replicates, jobs, [&](std::int64_t b) {
    const CountSample resampled =
        resample_with_replacement(data, derive_seed(seed, static_cast<std::uint64_t>(b)));
    try {
      const FitResult refit = fit_mle(resampled, spec, fit.estimates, refit_options);
      for (std::size_t k = 0; k < names.size(); ++k)
        estimates[k][static_cast<std::size_t>(b)] = refit.estimates.value_of(names[k]);
    } catch (const FitNonConvergence&) {
      failed[static_cast<std::size_t>(b)] = 1;
    }
  });

  const auto failures = std::count(failed.begin(), failed.end(), char{1});
  if (static_cast<double>(failures) > 0.2 * replicates) {
    std::ostringstream msg;
    msg << "bootstrap_bands: " << failures << " of " << replicates
        << " replicate refits failed to converge";
    throw std::runtime_error(msg.str());
  }

  // Type-7 percentile interval over the converged replicates.
  const auto percentile = [](std::vector<double>& sorted, double q) {
    const double h = q * (static_cast<double>(sorted.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double w = h - std::floor(h);
    return (1.0 - w) * sorted[lo] + w * sorted[hi];
  };

  std::map<std::string, std::pair<double, double>> bands;
  for (std::size_t k = 0; k < names.size(); ++k) {
    std::vector<double> kept;
    kept.reserve(estimates[k].size());
    for (std::size_t b = 0; b < estimates[k].size(); ++b)
      if (!failed[b]) kept.push_back(estimates[k][b]);
    std::sort(kept.begin(), kept.end());
    const double tail = 0.5 * (1.0 - level);
    bands[names[k]] = {percentile(kept, tail), percentile(kept, 1.0 - tail)};
  }
  return bands;
}

std::vector<std::size_t> compare_bic(const std::vector<FitResult>& fits) {
  if (fits.empty()) throw std::invalid_argument("compare_bic: no fits");
  for (const auto& fit : fits) {
    if (fit.n != fits.front().n ||
        fit.data_fingerprint != fits.front().data_fingerprint)
      throw std::invalid_argument("compare_bic: fits come from different datasets");
  }
  std::vector<std::size_t> order(fits.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (fits[a].bic != fits[b].bic) return fits[a].bic < fits[b].bic;
    const int ka = fits[a].spec.free_parameter_count();
    const int kb = fits[b].spec.free_parameter_count();
    if (ka != kb) return ka < kb;
    return fits[a].spec.name() < fits[b].spec.name();
  });
  return order;
}

}  // namespace degpd

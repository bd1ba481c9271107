#include "degpd/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace degpd {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                          const std::vector<double>& start,
                          const SimplexOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0) throw std::invalid_argument("nelder_mead: empty start point");

  constexpr double alpha = 1.0;  // reflection
  constexpr double gamma = 2.0;  // expansion
  constexpr double rho = 0.5;    // contraction
  constexpr double sigma = 0.5;  // shrink

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) {
    simplex[i + 1][i] += start[i] != 0.0
                             ? options.initial_step * std::fabs(start[i]) +
                                   options.initial_step
                             : options.initial_step;
  }
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = fn(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), candidate(dim);

  SimplexResult result;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    // Convergence: both the function spread and the simplex diameter shrink.
    const double f_spread = values[worst] - values[best];
    double x_spread = 0.0;
    for (std::size_t i = 0; i <= dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        x_spread = std::max(x_spread, std::fabs(simplex[i][k] - simplex[best][k]));
    if (f_spread < options.function_tolerance && x_spread < options.point_tolerance) {
      result.converged = true;
      result.iterations = iter;
      result.point = simplex[best];
      result.value = values[best];
      return result;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    const auto blend = [&](double t) {
      for (std::size_t k = 0; k < dim; ++k)
        candidate[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      return fn(candidate);
    };

    const double f_reflect = blend(-alpha);
    if (f_reflect < values[order[0]]) {
      const std::vector<double> reflected = candidate;
      const double f_expand = blend(-gamma);
      if (f_expand < f_reflect) {
        simplex[worst] = candidate;
        values[worst] = f_expand;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second_worst]) {
      simplex[worst] = candidate;
      values[worst] = f_reflect;
      continue;
    }
    const double f_contract = f_reflect < values[worst] ? blend(-rho * alpha) : blend(rho);
    if (f_contract < std::min(f_reflect, values[worst])) {
      simplex[worst] = candidate;
      values[worst] = f_contract;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < dim; ++k)
        simplex[i][k] = simplex[best][k] + sigma * (simplex[i][k] - simplex[best][k]);
      values[i] = fn(simplex[i]);
    }
  }

  const std::size_t best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  result.converged = false;
  result.iterations = options.max_iterations;
  result.point = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace degpd

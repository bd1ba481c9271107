#pragma once

#include <functional>
#include <vector>

namespace degpd {

struct SimplexOptions {
  int max_iterations = 2000;
  double function_tolerance = 1e-8;  // spread of f over the simplex
  double point_tolerance = 1e-8;     // max coordinate spread of the simplex
  double initial_step = 0.25;        // per-coordinate offset of the start simplex
};

struct SimplexResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Derivative-free Nelder-Mead minimization with the standard
// reflection/expansion/contraction/shrink coefficients.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                          const std::vector<double>& start,
                          const SimplexOptions& options = {});

}  // namespace degpd

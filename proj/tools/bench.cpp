// Times the serial reference paths against the OpenMP kernels on two
// representative workloads: the pmf mass sum and a recovery study. The
// outputs are also compared, since jobs must never change results.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "degpd/models.hpp"
#include "degpd/parallel.hpp"
#include "degpd/simlab.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Serial reference for pmf_mass: plain pmf loop, no chunking.
double pmf_mass_reference(const degpd::ModelSpec& spec,
                          const degpd::ParamVector& params, std::int64_t y_max) {
  const degpd::PmfEvaluator eval(spec, params);
  double sum = 0.0, comp = 0.0;
  for (std::int64_t y = 0; y <= y_max; ++y) {
    const double t = eval.pmf(y) - comp;
    const double next = sum + t;
    comp = (next - sum) - t;
    sum = next;
  }
  return sum;
}

}  // namespace

int main() {
  const int jobs = degpd::par::hardware_jobs();
  std::printf("hardware jobs: %d\n\n", jobs);

  {
    const auto spec = degpd::ModelSpec::degpd(degpd::CarrierKind::TruncBetaM3);
    const auto params = degpd::ParamVector::for_degpd(5.0, 1.0, 0.73);
    const std::int64_t y_max = degpd::quantile(1.0 - 1e-8, spec, params);
    std::printf("pmf mass sum, degpd-m3, %lld terms\n",
                static_cast<long long>(y_max + 1));

    auto start = Clock::now();
    const double serial = pmf_mass_reference(spec, params, y_max);
    const double t_serial = seconds_since(start);

    start = Clock::now();
    const double parallel = degpd::pmf_mass(spec, params, y_max, jobs);
    const double t_parallel = seconds_since(start);

    std::printf("  serial reference: %8.3fs  mass %.15f\n", t_serial, serial);
    std::printf("  openmp kernel:    %8.3fs  mass %.15f  speedup %.2fx\n\n",
                t_parallel, parallel, t_serial / t_parallel);
  }

  {
    degpd::RecoveryConfig config;
    config.spec = degpd::ModelSpec::degpd(degpd::CarrierKind::PowerM1);
    config.truth = degpd::ParamVector::for_degpd(2.0, 1.0, 0.2);
    config.n = 1000;
    config.replicates = 40;
    config.seed = 17;
    std::printf("recovery study, degpd-m1, %lld replicates of n=%lld\n",
                static_cast<long long>(config.replicates),
                static_cast<long long>(config.n));

    auto start = Clock::now();
    const auto serial = degpd::run_recovery(config, 1);
    const double t_serial = seconds_since(start);

    start = Clock::now();
    const auto parallel = degpd::run_recovery(config, jobs);
    const double t_parallel = seconds_since(start);

    const std::string a = degpd::study_rows_to_csv(serial.rows);
    const std::string b = degpd::study_rows_to_csv(parallel.rows);
    std::printf("  serial (jobs=1):  %8.3fs\n", t_serial);
    std::printf("  openmp (jobs=%d): %8.3fs  speedup %.2fx  outputs %s\n", jobs,
                t_parallel, t_serial / t_parallel,
                a == b ? "identical" : "DIFFER (bug)");
    if (a != b) return 1;
  }
  return 0;
}

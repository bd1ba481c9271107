#include <doctest.h>

#include <cmath>

#include "degpd/gof.hpp"
#include "degpd/serialize.hpp"

using namespace degpd;

TEST_CASE("fit results round trip through JSON exactly") {
  const ModelSpec spec = ModelSpec::zidegpd(CarrierKind::TruncBetaM3, 1.0 / 48.0);
  const CountSample data(sample(400, spec,
                                ParamVector::for_zidegpd(0.4, 3.0, 1.3, 0.25), 12));
  const FitResult fit = fit_mle(data, spec);
  const nlohmann::json j = fit_result_to_json(fit, 99);
  const FitResult back = fit_result_from_json(j);

  CHECK(back.spec.name() == fit.spec.name());
  CHECK(back.spec.carrier->omega == fit.spec.carrier->omega);
  CHECK(*back.estimates.pi == *fit.estimates.pi);
  CHECK(*back.estimates.kappa == *fit.estimates.kappa);
  CHECK(back.estimates.beta == fit.estimates.beta);
  CHECK(back.estimates.xi == fit.estimates.xi);
  CHECK(back.loglik == fit.loglik);
  CHECK(back.bic == fit.bic);
  CHECK(back.converged == fit.converged);
  CHECK(back.n == fit.n);
  CHECK(back.data_fingerprint == fit.data_fingerprint);
  CHECK(j.at("seed").get<std::uint64_t>() == 99);
}

TEST_CASE("a reloaded fit drives the diagnostics identically") {
  const ModelSpec spec = ModelSpec::degpd(CarrierKind::PowerM1);
  const CountSample data(sample(300, spec, ParamVector::for_degpd(2.0, 1.0, 0.2), 31));
  const FitResult fit = fit_mle(data, spec);
  const FitResult reloaded =
      fit_result_from_json(fit_result_to_json(fit, 0));

  const KsMcResult direct = ks_test_mc(data, spec, 99, 7, 0, {}, fit);
  const KsMcResult via_json = ks_test_mc(data, spec, 99, 7, 0, {}, reloaded);
  CHECK(direct.statistic == via_json.statistic);
  CHECK(direct.p_value == via_json.p_value);

  const auto qq_direct = qq_data(data, spec, fit.estimates);
  const auto qq_json = qq_data(data, reloaded.spec, reloaded.estimates);
  CHECK(qq_direct == qq_json);
}

TEST_CASE("bands and threshold survive serialization") {
  FitResult fit;
  fit.spec = ModelSpec::dgpd();
  fit.estimates = ParamVector::for_dgpd(10.62, 0.06);
  fit.loglik = -1128.9;
  fit.bic = 2267.96;
  fit.converged = true;
  fit.n = 500;
  fit.threshold = 1;
  fit.boot_bands["beta"] = {8.88, 12.35};
  fit.boot_bands["xi"] = {1.05e-2, 0.18};
  const FitResult back = fit_result_from_json(fit_result_to_json(fit, 5));
  CHECK(back.threshold == std::optional<std::int64_t>(1));
  CHECK(back.boot_bands.at("beta") == std::pair<double, double>{8.88, 12.35});
  CHECK(back.boot_bands.at("xi") == std::pair<double, double>{1.05e-2, 0.18});
}

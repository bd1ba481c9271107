#include "degpd/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace degpd {
namespace {

std::string carrier_suffix(const Carrier& carrier) {
  switch (carrier.kind) {
    case CarrierKind::PowerM1: return "m1";
    case CarrierKind::TruncNormalM2: return "m2";
    case CarrierKind::TruncBetaM3: return "m3";
  }
  throw std::logic_error("carrier_suffix: unknown kind");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::DGPD: return "dgpd";
    case Family::DEGPD: return "degpd";
    case Family::ZIDEGPD: return "zidegpd";
  }
  throw std::logic_error("family_name: unknown family");
}

}  // namespace

nlohmann::json fit_result_to_json(const FitResult& fit, std::uint64_t seed) {
  nlohmann::json j;
  j["model"] = family_name(fit.spec.family);
  if (fit.spec.carrier) {
    j["carrier"] = carrier_suffix(*fit.spec.carrier);
    j["omega"] = fit.spec.carrier->omega;
  }
  nlohmann::json estimates;
  for (const auto& name : fit.spec.parameter_names())
    estimates[name] = fit.estimates.value_of(name);
  j["estimates"] = estimates;
  if (!fit.boot_bands.empty()) {
    nlohmann::json bands;
    for (const auto& [name, band] : fit.boot_bands)
      bands[name] = {band.first, band.second};
    j["bands"] = bands;
  }
  j["loglik"] = fit.loglik;
  j["bic"] = fit.bic;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["n"] = fit.n;
  j["data_fingerprint"] = fit.data_fingerprint;
  if (fit.threshold) j["threshold"] = *fit.threshold;
  if (!fit.warnings.empty()) j["warnings"] = fit.warnings;
  j["seed"] = seed;
  return j;
}

FitResult fit_result_from_json(const nlohmann::json& j) {
  FitResult fit;
  const std::string family = j.at("model").get<std::string>();
  if (family == "dgpd") {
    fit.spec = ModelSpec::dgpd();
  } else {
    const std::string carrier = j.at("carrier").get<std::string>();
    const double omega = j.value("omega", 1.0 / 32.0);
    fit.spec = ModelSpec::parse(family + "-" + carrier, omega);
  }
  const auto& estimates = j.at("estimates");
  const double beta = estimates.at("beta").get<double>();
  const double xi = estimates.at("xi").get<double>();
  switch (fit.spec.family) {
    case Family::DGPD:
      fit.estimates = ParamVector::for_dgpd(beta, xi);
      break;
    case Family::DEGPD:
      fit.estimates =
          ParamVector::for_degpd(estimates.at("kappa").get<double>(), beta, xi);
      break;
    case Family::ZIDEGPD:
      fit.estimates = ParamVector::for_zidegpd(estimates.at("pi").get<double>(),
                                               estimates.at("kappa").get<double>(),
                                               beta, xi);
      break;
  }
  if (j.contains("bands"))
    for (const auto& [name, band] : j.at("bands").items())
      fit.boot_bands[name] = {band.at(0).get<double>(), band.at(1).get<double>()};
  fit.loglik = j.at("loglik").get<double>();
  fit.bic = j.at("bic").get<double>();
  fit.converged = j.at("converged").get<bool>();
  fit.iterations = j.value("iterations", 0);
  fit.n = j.value("n", std::int64_t{0});
  fit.data_fingerprint = j.value("data_fingerprint", std::uint64_t{0});
  if (j.contains("threshold")) fit.threshold = j.at("threshold").get<std::int64_t>();
  if (j.contains("warnings"))
    fit.warnings = j.at("warnings").get<std::vector<std::string>>();
  return fit;
}

FitResult load_fit_result(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open fit file: " + path);
  nlohmann::json j;
  file >> j;
  return fit_result_from_json(j);
}

}  // namespace degpd

#include "degpd/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "degpd/parallel.hpp"
#include "degpd/rng.hpp"

namespace degpd {
namespace {

Carrier carrier_of(const ModelSpec& spec) {
  if (!spec.carrier)
    throw std::invalid_argument("ModelSpec: family requires a carrier");
  return *spec.carrier;
}

}  // namespace

ModelSpec ModelSpec::dgpd() { return ModelSpec{Family::DGPD, std::nullopt}; }

ModelSpec ModelSpec::degpd(CarrierKind kind, double omega) {
  return ModelSpec{Family::DEGPD, Carrier(kind, omega)};
}

ModelSpec ModelSpec::zidegpd(CarrierKind kind, double omega) {
  return ModelSpec{Family::ZIDEGPD, Carrier(kind, omega)};
}

std::string ModelSpec::name() const {
  if (family == Family::DGPD) return "dgpd";
  const char* suffix = "";
  switch (carrier_of(*this).kind) {
    case CarrierKind::PowerM1: suffix = "m1"; break;
    case CarrierKind::TruncNormalM2: suffix = "m2"; break;
    case CarrierKind::TruncBetaM3: suffix = "m3"; break;
  }
  return (family == Family::DEGPD ? std::string("degpd-") : std::string("zidegpd-")) +
         suffix;
}

ModelSpec ModelSpec::parse(const std::string& name, double omega) {
  if (name == "dgpd") return dgpd();
  const auto kind_of = [](char c) {
    switch (c) {
      case '1': return CarrierKind::PowerM1;
      case '2': return CarrierKind::TruncNormalM2;
      case '3': return CarrierKind::TruncBetaM3;
    }
    throw std::invalid_argument("unknown carrier suffix");
  };
  try {
    if (name.rfind("degpd-m", 0) == 0 && name.size() == 8)
      return degpd(kind_of(name[7]), omega);
    if (name.rfind("zidegpd-m", 0) == 0 && name.size() == 10)
      return zidegpd(kind_of(name[9]), omega);
  } catch (const std::invalid_argument&) {
  }
  throw std::invalid_argument("unknown model selector '" + name +
                              "' (expected dgpd, degpd-m1|m2|m3, zidegpd-m1|m2|m3)");
}

int ModelSpec::free_parameter_count() const {
  switch (family) {
    case Family::DGPD: return 2;
    case Family::DEGPD: return 3;
    case Family::ZIDEGPD: return 4;
  }
  return 0;
}

std::vector<std::string> ModelSpec::parameter_names() const {
  switch (family) {
    case Family::DGPD: return {"beta", "xi"};
    case Family::DEGPD: return {"kappa", "beta", "xi"};
    case Family::ZIDEGPD: return {"pi", "kappa", "beta", "xi"};
  }
  return {};
}

ParamVector ParamVector::for_dgpd(double beta, double xi) {
  ParamVector p;
  p.beta = beta;
  p.xi = xi;
  return p;
}

ParamVector ParamVector::for_degpd(double kappa, double beta, double xi) {
  ParamVector p = for_dgpd(beta, xi);
  p.kappa = kappa;
  return p;
}

ParamVector ParamVector::for_zidegpd(double pi, double kappa, double beta, double xi) {
  ParamVector p = for_degpd(kappa, beta, xi);
  p.pi = pi;
  return p;
}

void ParamVector::validate_for(const ModelSpec& spec) const {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("ParamVector: beta must be positive and finite");
  if (!(xi >= 0.0) || !std::isfinite(xi))
    throw std::invalid_argument("ParamVector: xi must be >= 0 and finite");
  const bool wants_kappa = spec.family != Family::DGPD;
  const bool wants_pi = spec.family == Family::ZIDEGPD;
  if (wants_kappa != kappa.has_value())
    throw std::invalid_argument(wants_kappa
                                    ? "ParamVector: kappa required for this family"
                                    : "ParamVector: kappa not a DGPD parameter");
  if (wants_pi != pi.has_value())
    throw std::invalid_argument(wants_pi ? "ParamVector: pi required for ZIDEGPD"
                                         : "ParamVector: pi only valid for ZIDEGPD");
  if (kappa && (!(*kappa > 0.0) || !std::isfinite(*kappa)))
    throw std::invalid_argument("ParamVector: kappa must be positive and finite");
  if (pi && (!(*pi >= 0.0 && *pi <= 1.0)))
    throw std::invalid_argument("ParamVector: pi must lie in [0,1]");
}

double ParamVector::value_of(const std::string& parameter_name) const {
  if (parameter_name == "beta") return beta;
  if (parameter_name == "xi") return xi;
  if (parameter_name == "kappa" && kappa) return *kappa;
  if (parameter_name == "pi" && pi) return *pi;
  throw std::invalid_argument("ParamVector: no parameter named '" + parameter_name + "'");
}

PmfEvaluator::PmfEvaluator(const ModelSpec& spec, const ParamVector& params)
    : family_(spec.family), gpd_(params.beta, params.xi) {
  params.validate_for(spec);
  if (family_ != Family::DGPD)
    carrier_.emplace(carrier_of(spec), CarrierParams(*params.kappa));
  if (family_ == Family::ZIDEGPD) pi_ = *params.pi;
}

double PmfEvaluator::transformed_cdf(double y) const {
  const double f = gpd_cdf(y, gpd_);
  if (family_ == Family::DGPD) return f;
  return carrier_->cdf(f);
}

double PmfEvaluator::pmf(std::int64_t y) const {
  if (y < 0) return 0.0;
  const double step = [&] {
    const double hi = transformed_cdf(static_cast<double>(y) + 1.0);
    if (y == 0) return hi;
    return std::max(0.0, hi - transformed_cdf(static_cast<double>(y)));
  }();
  if (family_ != Family::ZIDEGPD) return step;
  if (y == 0) return pi_ + (1.0 - pi_) * step;
  return (1.0 - pi_) * step;
}

double PmfEvaluator::cdf(std::int64_t y) const {
  if (y < 0) return 0.0;
  const double base = transformed_cdf(static_cast<double>(y) + 1.0);
  if (family_ != Family::ZIDEGPD) return base;
  return pi_ + (1.0 - pi_) * base;
}

double pmf(std::int64_t y, const ModelSpec& spec, const ParamVector& params) {
  return PmfEvaluator(spec, params).pmf(y);
}

double cdf(std::int64_t y, const ModelSpec& spec, const ParamVector& params) {
  return PmfEvaluator(spec, params).cdf(y);
}

double tail_survival_bound(std::int64_t y, const ModelSpec& spec,
                           const ParamVector& params) {
  return 1.0 - cdf(y, spec, params);
}

std::int64_t PmfEvaluator::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("quantile: p must lie strictly in (0,1)");

  double p_inner = p;
  if (family_ == Family::ZIDEGPD) {
    if (p <= pi_) return 0;  // cdf(0) >= pi, so 0 is the generalized inverse
    p_inner = (p - pi_) / (1.0 - pi_);
  }

  // Undo the carrier, then the GPD, then take the integer ceiling.
  double u = p_inner;
  if (family_ != Family::DGPD) u = carrier_->quantile(p_inner);
  u = std::min(u, 1.0 - 0x1.0p-53);  // carrier inversion may round onto 1
  const double z = gpd_quantile(u, gpd_);
  if (!(z < 9.0e18))
    throw std::domain_error("quantile: result exceeds the integer range");
  std::int64_t q = static_cast<std::int64_t>(std::ceil(z)) - 1;
  if (q < 0) q = 0;

  // Ceiling arithmetic can land one off at representable boundaries; the CDF
  // is authoritative. Normally a single nudge suffices; fall back to a
  // bracketed binary search if roundoff sent the closed form far off.
  int steps = 64;
  if (cdf(q) < p) {
    while (steps-- > 0 && cdf(q) < p) ++q;
    if (cdf(q) < p) {
      std::int64_t lo = q, hi = q + 1;
      while (cdf(hi) < p) {
        lo = hi;
        hi *= 2;
      }
      while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (cdf(mid) < p ? lo : hi) = mid;
      }
      q = hi;
    }
  } else {
    while (steps-- > 0 && q > 0 && cdf(q - 1) >= p) --q;
    if (q > 0 && cdf(q - 1) >= p) {
      std::int64_t lo = -1, hi = q - 1;
      while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (cdf(mid) < p ? lo : hi) = mid;
      }
      q = hi;
    }
  }
  return q;
}

std::int64_t quantile(double p, const ModelSpec& spec, const ParamVector& params) {
  return PmfEvaluator(spec, params).quantile(p);
}

std::vector<std::int64_t> sample(std::int64_t n, const ModelSpec& spec,
                                 const ParamVector& params, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  const PmfEvaluator eval(spec, params);
  Rng rng(seed);
  std::vector<std::int64_t> draws(static_cast<std::size_t>(n));
  for (auto& value : draws) value = eval.quantile(rng.uniform01());
  return draws;
}

double pmf_mass(const ModelSpec& spec, const ParamVector& params,
                std::int64_t y_max, int jobs) {
  const PmfEvaluator eval(spec, params);
  if (y_max < 0) return 0.0;
  constexpr std::int64_t kChunk = 8192;
  const std::int64_t n_terms = y_max + 1;
  const std::int64_t n_chunks = (n_terms + kChunk - 1) / kChunk;
  std::vector<double> partial(static_cast<std::size_t>(n_chunks), 0.0);
  par::for_index(n_chunks, jobs, [&](std::int64_t c) {
    const std::int64_t begin = c * kChunk;
    const std::int64_t end = std::min(begin + kChunk, n_terms);
    // Kahan within the chunk; chunk boundaries are fixed, so the value does
    // not depend on the thread count.
    double sum = 0.0, comp = 0.0;
    for (std::int64_t y = begin; y < end; ++y) {
      const double t = eval.pmf(y) - comp;
      const double next = sum + t;
      comp = (next - sum) - t;
      sum = next;
    }
    partial[static_cast<std::size_t>(c)] = sum;
  });
  double total = 0.0, comp = 0.0;
  for (const double part : partial) {
    const double t = part - comp;
    const double next = total + t;
    comp = (next - total) - t;
    total = next;
  }
  return total;
}

}  // namespace degpd

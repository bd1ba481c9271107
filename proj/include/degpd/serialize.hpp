#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "degpd/inference.hpp"

namespace degpd {

// Fit results as JSON, round-tripping exactly: a result written and read
// back drives the diagnostics identically to the in-process fit.
nlohmann::json fit_result_to_json(const FitResult& fit, std::uint64_t seed);
FitResult fit_result_from_json(const nlohmann::json& j);

FitResult load_fit_result(const std::string& path);

}  // namespace degpd

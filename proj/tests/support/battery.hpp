#pragma once

// Fixed analyze requests used for CLI/HTTP parity checks.

#include <string>
#include <vector>

#include "json.hpp"

namespace kawin::testing {

inline const char* const kSamplePhrase =
    "Pichikalu iñche , amukefun chillkatuwe ruka mew , fewla chillkatuwekelan.";

/// Twenty request bodies, including failing ones.
std::vector<nlohmann::json> parity_battery();

/// CLI arguments equivalent to an analyze request body, ending in --json.
std::vector<std::string> cli_args(const nlohmann::json& request);

/// Drops timing metadata from an analyze response.
nlohmann::json without_timing(nlohmann::json response);

}  // namespace kawin::testing

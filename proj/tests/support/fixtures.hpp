#pragma once

// Shared access to the shipped data for tests.

#include <filesystem>
#include <string>

#include "kawin/grapheme.hpp"
#include "kawin/lexicon.hpp"

namespace kawin::testing {

std::filesystem::path data_dir();
const Inventory& default_inventory();
const Lexicon& default_lexicon();

/// Ragileo text to phonemes with the default inventory.
PhonemeString ragileo(const std::string& text);

}  // namespace kawin::testing

#pragma once

// Validity predicate for segmentations, written against the grammar rules
// directly and sharing no code with the analyzer's search.

#include <cstddef>
#include <string>
#include <vector>

#include "kawin/analyzer.hpp"
#include "kawin/lexicon.hpp"

namespace kawin::testing {

/// Every rule the segmentation breaks; empty when valid.
std::vector<std::string> violations(const Segmentation& seg, const Lexicon& lexicon);

/// Process-wide tally of segmentations passed through check().
struct ValidityTally {
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

ValidityTally& tally();

/// Records and returns the violations of every segmentation in `analysis`.
std::vector<std::string> check(const Analysis& analysis, const Lexicon& lexicon);

/// segment() followed by check().
Analysis checked_segment(const PhonemeString& word, const Lexicon& lexicon,
                         const SegmentOptions& options = {});

}  // namespace kawin::testing

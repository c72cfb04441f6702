#pragma once

// Plain-language gloss lines for a segmentation ("informal translation"):
// one line per morpheme, or one per co-occurring sequence that a
// combination rule gives its own meaning.

#include <string>
#include <vector>

#include "json.hpp"

#include "kawin/analyzer.hpp"
#include "kawin/grapheme.hpp"
#include "kawin/lexicon.hpp"

namespace kawin {

enum class LineKind : std::uint8_t { Root, Suffix, Ending, Combination };

std::string_view to_string(LineKind kind);

struct GlossLine {
  LineKind kind = LineKind::Suffix;
  /// Morph surface in the display orthography, without hyphens.
  std::string surface;
  /// Display label: "txeka(n)-", "-yaw-", "-i".
  std::string label;
  std::vector<std::string> morph_ids;
  /// Set for combination lines.
  std::string rule_id;
  GlossEntry gloss;
  std::size_t first_piece = 0;
  std::size_t piece_count = 1;

  friend bool operator==(const GlossLine&, const GlossLine&) = default;
};

struct GlossedAnalysis {
  Segmentation segmentation;
  Orthography display = Orthography::Ragileo;
  std::vector<GlossLine> lines;
  /// Display surface of every piece, in order.
  std::vector<std::string> piece_surfaces;
  /// Glosses ignore sentence context.
  bool context_free = true;

  /// Piece surfaces joined with hyphens: "txeka-yaw-ke-la-i".
  std::string header() const;

  friend bool operator==(const GlossedAnalysis&, const GlossedAnalysis&) = default;
};

class GlossError : public Error {
 public:
  using Error::Error;
};

/// Applies combination rules longest first (leftmost among equals, no
/// overlaps) over runs of suffix pieces and glosses the rest one by one.
/// Throws GlossError when a morph or gloss id does not resolve.
GlossedAnalysis gloss(const Segmentation& seg, const Lexicon& lexicon, const Inventory& inventory,
                      Orthography display);

enum class Format { Text, Json };

struct FormatOptions {
  bool english = false;
};

std::string format_analysis(const GlossedAnalysis& g, Format format,
                            const Inventory& inventory, const FormatOptions& options = {});

/// Text block for a word with no analysis: the word plus its dead ends.
std::string format_no_analysis(const std::string& word, const std::vector<std::string>& failures);

nlohmann::json to_json(const GlossedAnalysis& g, const Inventory& inventory);
/// Inverse of to_json. Throws GlossError on malformed input.
GlossedAnalysis glossed_from_json(const nlohmann::json& j, const Inventory& inventory);

}  // namespace kawin

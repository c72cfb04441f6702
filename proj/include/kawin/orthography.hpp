#pragma once

// Conversion between the three orthographies and round-trip detection of
// the orthography a text is written in.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kawin/grapheme.hpp"

namespace kawin {

struct ConversionResult {
  std::string text;
  Orthography source = Orthography::Ragileo;
  Orthography target = Orthography::Ragileo;
  /// Phonemes the target orthography cannot write; offsets into `text`.
  std::vector<LossNote> loss_notes;

  bool lossy() const { return !loss_notes.empty(); }
};

/// render(tokenize(text, from), to). Propagates TokenizeError/RenderError.
ConversionResult convert(std::string_view text, Orthography from, Orthography to,
                         const Inventory& inventory);

struct DetectionResult {
  /// Nonempty, in Ragileo, Unificado, Azumchefe order.
  std::vector<Orthography> candidates;
  bool unanimous = false;
  /// How each candidate reads the text.
  std::map<Orthography, PhonemeString> readings;

  bool contains(Orthography o) const;
};

/// Why one orthography was rejected as a reading of a text.
struct Rejection {
  Orthography orthography;
  std::string reason;
};

class UndetectableError : public Error {
 public:
  UndetectableError(std::string text, std::vector<Rejection> rejections);
  const std::string& text() const noexcept { return text_; }
  const std::vector<Rejection>& rejections() const noexcept { return rejections_; }

 private:
  std::string text_;
  std::vector<Rejection> rejections_;
};

/// X is a candidate iff the text tokenizes under X and converting to every
/// other orthography and back reproduces the case-normalized input.
/// Throws std::invalid_argument for blank text, UndetectableError when no
/// orthography qualifies.
DetectionResult detect(std::string_view text, const Inventory& inventory);

struct WordDetection {
  std::string word;
  std::optional<DetectionResult> result;
  std::vector<Rejection> rejections;  // set when result is empty
};

struct DocumentDetection {
  DetectionResult overall;
  /// Per-word candidate sets had an empty intersection; `overall` holds the
  /// majority-vote winners instead.
  bool conflict = false;
  std::vector<WordDetection> words;
};

/// Intersection of per-word candidates, majority vote when it is empty.
/// Throws std::invalid_argument for no words, UndetectableError when every
/// word is undetectable.
DocumentDetection detect_document(const std::vector<std::string>& words,
                                  const Inventory& inventory);

enum class ResolutionRule {
  Declared,           // caller named the orthography
  IdenticalReadings,  // every candidate reads the word the same way
  Unique,             // exactly one candidate
  FewestUnits,        // the candidates using the most multigraphs agree
};

std::string_view to_string(ResolutionRule rule);

struct Resolution {
  Orthography orthography;
  ResolutionRule rule;
  /// Candidates whose reading equals the chosen one.
  std::vector<Orthography> agreeing;
};

/// Picks one reading out of a detection, or nullopt when the candidates
/// disagree and no rule separates them.
std::optional<Resolution> resolve(const DetectionResult& detection);

/// Splits text on whitespace and peels leading/trailing punctuation off
/// each chunk. Word tokens come back with is_word set.
struct TextSegment {
  std::string text;
  bool is_word = false;
};
std::vector<TextSegment> split_words(std::string_view text);

}  // namespace kawin

#pragma once

// Exhaustive root + suffix segmentation under slot order and
// requires/excludes constraints.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kawin/grapheme.hpp"
#include "kawin/lexicon.hpp"

namespace kawin {

enum class PieceKind : std::uint8_t { Root, Suffix, Ending };

std::string_view to_string(PieceKind kind);

struct Piece {
  PieceKind kind = PieceKind::Root;
  std::string morph_id;
  /// Half-open phoneme offsets into the word.
  std::size_t begin = 0;
  std::size_t end = 0;
  /// Set on roots emitted as parts of a compound root entry.
  std::string compound_id;

  friend bool operator==(const Piece&, const Piece&) = default;
};

struct Segmentation {
  PhonemeString word;
  std::vector<Piece> pieces;

  /// Piece count; lower sorts first.
  int score() const { return static_cast<int>(pieces.size()); }

  friend bool operator==(const Segmentation&, const Segmentation&) = default;
};

enum class FailureReason : std::uint8_t {
  None,
  NoMatch,        // no lexicon form continues the word here
  SlotOrder,      // suffix slot not above the previous one
  Compatibility,  // excluded co-occurrence, or a requirement left unmet
  NoEnding,       // verbal word without a final ending
  Duplicate,      // identical to an analysis found on another branch
};

std::string_view to_string(FailureReason reason);

struct DerivationNode {
  enum class Status : std::uint8_t { Interior, Complete, DeadEnd, Truncated };

  std::string morph_id;  // empty for the tree root (the word itself)
  PieceKind kind = PieceKind::Root;
  std::size_t begin = 0;
  std::size_t end = 0;
  Status status = Status::Interior;
  FailureReason reason = FailureReason::None;
  std::string detail;
  std::vector<DerivationNode> children;
};

std::string_view to_string(DerivationNode::Status status);

struct SegmentOptions {
  std::size_t max_segmentations = 50;
};

struct Analysis {
  std::vector<Segmentation> segmentations;
  bool truncated = false;
  DerivationNode tree;

  /// One line per distinct dead end, e.g. "no-match at 4 after xeka-yaw".
  std::vector<std::string> failures() const;
};

/// All valid segmentations of `word`, sorted by (piece count, piece ids).
/// An unanalyzable word yields an empty list and a tree of dead ends.
Analysis segment(const PhonemeString& word, const Lexicon& lexicon,
                 const SegmentOptions& options = {});

/// Analyzes each word independently. Items without phonemes (punctuation)
/// come back with an empty, untouched Analysis and `is_word == false`.
struct PhraseItem {
  PhonemeString text;
  bool is_word = false;
  Analysis analysis;
};
std::vector<PhraseItem> segment_phrase(std::span<const PhonemeString> words,
                                       const Lexicon& lexicon,
                                       const SegmentOptions& options = {});

}  // namespace kawin

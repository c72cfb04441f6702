#pragma once

// Phoneme inventory, per-orthography grapheme tables, and lossless
// conversion between surface text and phoneme strings.

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kawin/error.hpp"

namespace kawin {

enum class Orthography : std::uint8_t { Ragileo, Unificado, Azumchefe };

inline constexpr std::array<Orthography, 3> kAllOrthographies{
    Orthography::Ragileo, Orthography::Unificado, Orthography::Azumchefe};

/// Lowercase ASCII key used in data files, JSON and CLI ("azumchefe").
std::string_view to_string(Orthography o);
/// Human-readable name ("Azümchefe").
std::string_view display_name(Orthography o);
/// Accepts the ASCII key or the display name, case-insensitively.
std::optional<Orthography> parse_orthography(std::string_view name);
/// Like parse_orthography but throws std::invalid_argument.
Orthography orthography_from_string(std::string_view name);

struct PhonemeId {
  std::uint16_t value = 0;
  friend auto operator<=>(const PhonemeId&, const PhonemeId&) = default;
};

/// One unit of a phoneme string: either a phoneme or an opaque run of
/// non-letter characters (spaces, punctuation, digits).
struct Token {
  enum class Kind : std::uint8_t { Phoneme, Literal };

  Kind kind = Kind::Phoneme;
  PhonemeId phoneme{};
  bool capitalized = false;
  std::string literal;

  // Provenance only; not part of equality.
  std::string surface;
  std::size_t offset = 0;

  bool is_phoneme() const { return kind == Kind::Phoneme; }

  friend bool operator==(const Token& a, const Token& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Literal) return a.literal == b.literal;
    return a.phoneme == b.phoneme && a.capitalized == b.capitalized;
  }
};

struct PhonemeString {
  std::vector<Token> tokens;

  void push_phoneme(PhonemeId id, bool capitalized = false);
  void push_literal(std::string text);

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
  bool has_literals() const;
  /// Phoneme ids in order, literals skipped.
  std::vector<PhonemeId> phonemes() const;
  /// Same string with every case flag cleared.
  PhonemeString lowercased() const;

  friend bool operator==(const PhonemeString&, const PhonemeString&) = default;
};

class TokenizeError : public Error {
 public:
  TokenizeError(Orthography orthography, std::size_t offset,
                std::size_t byte_offset, std::string substring);

  Orthography orthography() const noexcept { return orthography_; }
  /// Code-point offset into the NFC-normalized input.
  std::size_t offset() const noexcept { return offset_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }
  const std::string& substring() const noexcept { return substring_; }

 private:
  Orthography orthography_;
  std::size_t offset_;
  std::size_t byte_offset_;
  std::string substring_;
};

class RenderError : public Error {
 public:
  RenderError(Orthography orthography, std::string phoneme);
  const std::string& phoneme() const noexcept { return phoneme_; }
  Orthography orthography() const noexcept { return orthography_; }

 private:
  Orthography orthography_;
  std::string phoneme_;
};

struct GraphemeEntry {
  /// Canonical spelling; empty when the orthography has no grapheme ("-").
  std::string grapheme;
  /// Extra spellings accepted on input, never produced on output.
  std::vector<std::string> alternates;
  std::optional<std::string> fallback;

  bool represented() const { return !grapheme.empty(); }
};

struct Match {
  PhonemeId phoneme;
  std::size_t length;  // code points
};

class GraphemeTable {
 public:
  GraphemeTable() = default;
  GraphemeTable(Orthography orthography, std::vector<GraphemeEntry> entries);

  Orthography orthography() const { return orthography_; }
  const GraphemeEntry& entry(PhonemeId id) const;
  std::size_t size() const { return entries_.size(); }

  /// Longest grapheme starting at `pos`, compared case-insensitively. A
  /// match never ends in front of a combining mark.
  std::optional<Match> longest_match(std::u32string_view text,
                                     std::size_t pos) const;

 private:
  Orthography orthography_ = Orthography::Ragileo;
  std::vector<GraphemeEntry> entries_;
  std::unordered_map<std::u32string, PhonemeId> lookup_;
  std::size_t max_length_ = 0;
};

struct InventoryOptions {
  /// Reads Unificado interdentals (and s̲) as their unmarked letters and
  /// renders them lossily, matching texts that do not mark them.
  bool unificado_plain_interdentals = false;
  /// Every unrepresented phoneme must declare a fallback grapheme.
  bool require_fallbacks = true;
};

class Inventory {
 public:
  static Inventory parse(std::string_view tsv, const InventoryOptions& options = {});
  static Inventory load(const std::filesystem::path& file,
                        const InventoryOptions& options = {});

  std::size_t size() const { return ids_.size(); }
  const std::string& id(PhonemeId p) const;
  std::optional<PhonemeId> find(std::string_view id) const;
  /// Throws std::out_of_range for unknown ids.
  PhonemeId at(std::string_view id) const;
  const GraphemeTable& table(Orthography o) const;
  bool represented(PhonemeId p, Orthography o) const;
  /// Phonemes with a grapheme in every orthography.
  std::vector<PhonemeId> fully_represented() const;

 private:
  std::vector<std::string> ids_;
  std::array<GraphemeTable, 3> tables_;
};

PhonemeString tokenize(std::string_view text, Orthography orthography,
                       const Inventory& inventory);

struct LossNote {
  std::size_t offset;  // code point offset into the rendered text
  PhonemeId phoneme;
  friend bool operator==(const LossNote&, const LossNote&) = default;
};

struct RenderResult {
  std::string text;
  std::vector<LossNote> losses;
  bool lossy() const { return !losses.empty(); }
};

RenderResult render(const PhonemeString& phonemes, Orthography orthography,
                    const Inventory& inventory);

}  // namespace kawin

#pragma once

// Morphological data: roots, slotted suffixes, plain-language glosses and
// combination rules. Forms are written in Ragileo in the data files.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kawin/grapheme.hpp"

namespace kawin {

enum class PartOfSpeech : std::uint8_t {
  VerbIntransitive,
  VerbTransitive,
  Noun,
  Adjective,
  Adverb,
};

/// Short label used in the data files and in gloss lines: vi, vtr, s, adj, adv.
std::string_view to_string(PartOfSpeech pos);
std::optional<PartOfSpeech> parse_part_of_speech(std::string_view label);

struct RootEntry {
  std::string id;
  PhonemeString citation_form;
  PhonemeString stem;
  std::vector<PartOfSpeech> pos;
  bool incorporable = false;
  std::string gloss_id;
  /// Root ids this compound is made of, in order; empty for simple roots.
  std::vector<std::string> parts;

  /// True when every listed part of speech is verbal; such words need an ending.
  bool verbal() const;
  bool compound() const { return !parts.empty(); }
};

enum class SuffixKind : std::uint8_t { Suffix, Ending };

std::string_view to_string(SuffixKind kind);

struct SuffixEntry {
  std::string id;
  PhonemeString form;
  int slot = 1;
  SuffixKind kind = SuffixKind::Suffix;
  std::string gloss_id;
  std::vector<std::string> requires_ids;
  std::vector<std::string> excludes_ids;
};

struct GlossEntry {
  std::string id;
  std::string plain_es;
  std::optional<std::string> plain_en;
  std::vector<std::string> tags;

  friend bool operator==(const GlossEntry&, const GlossEntry&) = default;
};

struct CombinationRule {
  std::string id;
  std::vector<std::string> sequence;
  std::string gloss_id;
};

struct LexiconData {
  std::vector<RootEntry> roots;
  std::vector<SuffixEntry> suffixes;
  std::vector<GlossEntry> glosses;
  std::vector<CombinationRule> combos;
};

class Lexicon {
 public:
  /// Validates every invariant and cross-reference; throws LoadError.
  explicit Lexicon(LexiconData data);

  const std::vector<RootEntry>& roots() const { return data_.roots; }
  const std::vector<SuffixEntry>& suffixes() const { return data_.suffixes; }
  const std::vector<GlossEntry>& glosses() const { return data_.glosses; }
  const std::vector<CombinationRule>& combos() const { return data_.combos; }

  const RootEntry* find_root(std::string_view id) const;
  const SuffixEntry* find_suffix(std::string_view id) const;
  const GlossEntry* find_gloss(std::string_view id) const;
  std::optional<std::size_t> root_index(std::string_view id) const;
  std::optional<std::size_t> suffix_index(std::string_view id) const;

  /// Stem / form phonemes, cached for matching.
  std::span<const PhonemeId> stem(std::size_t root) const { return stems_[root]; }
  std::span<const PhonemeId> form(std::size_t suffix) const { return forms_[suffix]; }

  /// Indices of roots / suffixes whose stem / form starts with `first`, in
  /// file order.
  std::span<const std::size_t> roots_starting_with(PhonemeId first) const;
  std::span<const std::size_t> suffixes_starting_with(PhonemeId first) const;

 private:
  LexiconData data_;
  std::vector<std::vector<PhonemeId>> stems_;
  std::vector<std::vector<PhonemeId>> forms_;
  std::map<std::string, std::size_t, std::less<>> root_ids_;
  std::map<std::string, std::size_t, std::less<>> suffix_ids_;
  std::map<std::string, std::size_t, std::less<>> gloss_ids_;
  std::map<PhonemeId, std::vector<std::size_t>> roots_by_first_;
  std::map<PhonemeId, std::vector<std::size_t>> suffixes_by_first_;
};

/// Reads roots.tsv, suffixes.tsv, glosses.tsv and combos.tsv from `dir`.
Lexicon load_lexicon(const std::filesystem::path& dir, const Inventory& inventory);

/// Non-fatal problems: identical form+slot suffixes, combination rules whose
/// sequence can never occur, glosses nothing refers to.
std::vector<std::string> validate_lexicon(const Lexicon& lexicon);

}  // namespace kawin

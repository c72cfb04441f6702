#include "oracle.hpp"

#include <algorithm>

#include "checker.hpp"

namespace kawin::testing {

namespace {

// Every lexicon reading of ids[begin, end), as one or more pieces.
std::vector<std::vector<Piece>> readings(const std::vector<PhonemeId>& ids, std::size_t begin,
                                         std::size_t end, const Lexicon& lexicon) {
  const std::vector<PhonemeId> span(ids.begin() + static_cast<std::ptrdiff_t>(begin),
                                    ids.begin() + static_cast<std::ptrdiff_t>(end));
  std::vector<std::vector<Piece>> out;
  for (const RootEntry& r : lexicon.roots()) {
    if (r.stem.phonemes() != span) continue;
    if (!r.compound()) {
      out.push_back({Piece{PieceKind::Root, r.id, begin, end, {}}});
      continue;
    }
    std::vector<Piece> parts;
    std::size_t pos = begin;
    for (const std::string& id : r.parts) {
      const std::size_t len = lexicon.find_root(id)->stem.phonemes().size();
      parts.push_back(Piece{PieceKind::Root, id, pos, pos + len, r.id});
      pos += len;
    }
    out.push_back(std::move(parts));
  }
  for (const SuffixEntry& s : lexicon.suffixes()) {
    if (s.form.phonemes() != span) continue;
    out.push_back({Piece{s.kind == SuffixKind::Ending ? PieceKind::Ending : PieceKind::Suffix,
                         s.id, begin, end, {}}});
  }
  return out;
}

void enumerate(const std::vector<PhonemeId>& ids, std::size_t pos, const Lexicon& lexicon,
               std::vector<Piece>& current, std::vector<std::vector<Piece>>& out) {
  if (pos == ids.size()) {
    out.push_back(current);
    return;
  }
  for (std::size_t end = pos + 1; end <= ids.size(); ++end) {
    for (const std::vector<Piece>& r : readings(ids, pos, end, lexicon)) {
      current.insert(current.end(), r.begin(), r.end());
      enumerate(ids, end, lexicon, current, out);
      current.resize(current.size() - r.size());
    }
  }
}

}  // namespace

std::vector<std::vector<Piece>> oracle_segmentations(const PhonemeString& word,
                                                     const Lexicon& lexicon) {
  std::vector<std::vector<Piece>> all;
  if (word.empty() || word.has_literals()) return all;
  std::vector<Piece> current;
  enumerate(word.phonemes(), 0, lexicon, current, all);

  std::vector<std::vector<Piece>> valid;
  for (auto& pieces : all) {
    if (violations(Segmentation{word, pieces}, lexicon).empty()) valid.push_back(std::move(pieces));
  }
  return valid;
}

}  // namespace kawin::testing

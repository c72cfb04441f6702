#include "checker.hpp"

#include <algorithm>
#include <mutex>

namespace kawin::testing {

namespace {

std::string describe(const Piece& p) {
  return "'" + p.morph_id + "' [" + std::to_string(p.begin) + "," + std::to_string(p.end) + ")";
}

bool has_suffix(const std::vector<Piece>& pieces, const std::string& id) {
  return std::any_of(pieces.begin(), pieces.end(),
                     [&](const Piece& p) { return p.kind != PieceKind::Root && p.morph_id == id; });
}

std::mutex tally_mutex;

}  // namespace

std::vector<std::string> violations(const Segmentation& seg, const Lexicon& lexicon) {
  std::vector<std::string> v;
  const auto& pieces = seg.pieces;
  const std::vector<PhonemeId> ids = seg.word.phonemes();

  if (seg.word.has_literals()) v.push_back("word contains literal tokens");
  if (pieces.empty()) {
    v.push_back("no pieces");
    return v;
  }

  // Spans partition the word and each span spells its morph.
  std::size_t pos = 0;
  for (const Piece& p : pieces) {
    if (p.begin != pos) v.push_back(describe(p) + " does not start where the previous piece ended");
    if (p.end <= p.begin) v.push_back(describe(p) + " is empty");
    if (p.end > ids.size()) {
      v.push_back(describe(p) + " runs past the word");
      return v;
    }
    pos = p.end;

    std::vector<PhonemeId> form;
    if (p.kind == PieceKind::Root) {
      const RootEntry* r = lexicon.find_root(p.morph_id);
      if (!r) {
        v.push_back(describe(p) + " is not a root");
        continue;
      }
      form = r->stem.phonemes();
    } else {
      const SuffixEntry* s = lexicon.find_suffix(p.morph_id);
      if (!s) {
        v.push_back(describe(p) + " is not a suffix");
        continue;
      }
      if ((s->kind == SuffixKind::Ending) != (p.kind == PieceKind::Ending)) {
        v.push_back(describe(p) + " has the wrong kind");
      }
      form = s->form.phonemes();
    }
    if (p.end >= p.begin &&
        !std::equal(ids.begin() + static_cast<std::ptrdiff_t>(p.begin),
                    ids.begin() + static_cast<std::ptrdiff_t>(p.end), form.begin(), form.end())) {
      v.push_back(describe(p) + " does not spell its form");
    }
  }
  if (pos != ids.size()) v.push_back("pieces stop at " + std::to_string(pos) + " of " +
                                     std::to_string(ids.size()));

  // Head: one simple root, or the parts of one compound root.
  if (pieces[0].kind != PieceKind::Root) {
    v.push_back("first piece is not a root");
    return v;
  }
  const RootEntry* head = nullptr;
  std::size_t h = 0;
  if (!pieces[0].compound_id.empty()) {
    head = lexicon.find_root(pieces[0].compound_id);
    if (!head || !head->compound()) {
      v.push_back("'" + pieces[0].compound_id + "' is not a compound root");
      return v;
    }
    for (const std::string& part : head->parts) {
      if (h >= pieces.size() || pieces[h].kind != PieceKind::Root ||
          pieces[h].morph_id != part || pieces[h].compound_id != head->id) {
        v.push_back("compound '" + head->id + "' is not spelled by its parts");
        return v;
      }
      ++h;
    }
  } else {
    head = lexicon.find_root(pieces[0].morph_id);
    if (!head) return v;
    if (head->compound()) v.push_back("compound root '" + head->id + "' used unexpanded");
    h = 1;
  }
  for (std::size_t i = h; i < pieces.size(); ++i) {
    if (!pieces[i].compound_id.empty()) v.push_back(describe(pieces[i]) + " has a stray compound id");
  }

  // Optional incorporated noun right after a verbal head.
  if (h < pieces.size() && pieces[h].kind == PieceKind::Root) {
    const RootEntry* noun = lexicon.find_root(pieces[h].morph_id);
    if (!head->verbal()) v.push_back("root after a non-verbal head");
    if (noun && (!noun->incorporable || noun->compound())) {
      v.push_back(describe(pieces[h]) + " cannot be incorporated");
    }
    ++h;
  }

  // Suffixes: strictly increasing slots, ending only in last position.
  int last_slot = 0;
  for (std::size_t i = h; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (p.kind == PieceKind::Root) {
      v.push_back(describe(p) + " is a root among the suffixes");
      continue;
    }
    const SuffixEntry* s = lexicon.find_suffix(p.morph_id);
    if (!s) continue;
    if (s->slot <= last_slot) {
      v.push_back(describe(p) + " slot " + std::to_string(s->slot) + " not above " +
                  std::to_string(last_slot));
    }
    last_slot = s->slot;
    if (p.kind == PieceKind::Ending && i + 1 != pieces.size()) {
      v.push_back(describe(p) + " is an ending before the end of the word");
    }
    for (const std::string& r : s->requires_ids) {
      if (!has_suffix(pieces, r)) v.push_back(describe(p) + " requires '" + r + "'");
    }
    for (const std::string& x : s->excludes_ids) {
      if (has_suffix(pieces, x)) v.push_back(describe(p) + " excludes '" + x + "'");
    }
  }

  if (head->verbal() && pieces.back().kind != PieceKind::Ending) {
    v.push_back("verbal word without an ending");
  }
  return v;
}

ValidityTally& tally() {
  static ValidityTally t;
  return t;
}

std::vector<std::string> check(const Analysis& analysis, const Lexicon& lexicon) {
  std::vector<std::string> all;
  for (const Segmentation& seg : analysis.segmentations) {
    for (std::string& v : violations(seg, lexicon)) all.push_back(std::move(v));
  }
  std::lock_guard lock(tally_mutex);
  tally().checked += analysis.segmentations.size();
  tally().failures.insert(tally().failures.end(), all.begin(), all.end());
  return all;
}

Analysis checked_segment(const PhonemeString& word, const Lexicon& lexicon,
                         const SegmentOptions& options) {
  Analysis a = segment(word, lexicon, options);
  check(a, lexicon);
  return a;
}

}  // namespace kawin::testing

#include "kawin/analyzer.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace kawin {

std::string_view to_string(PieceKind kind) {
  switch (kind) {
    case PieceKind::Root: return "root";
    case PieceKind::Suffix: return "suffix";
    case PieceKind::Ending: return "ending";
  }
  return "?";
}

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::None: return "none";
    case FailureReason::NoMatch: return "no-match";
    case FailureReason::SlotOrder: return "slot-order";
    case FailureReason::Compatibility: return "compatibility";
    case FailureReason::NoEnding: return "no-ending";
    case FailureReason::Duplicate: return "duplicate";
  }
  return "?";
}

std::string_view to_string(DerivationNode::Status status) {
  switch (status) {
    case DerivationNode::Status::Interior: return "interior";
    case DerivationNode::Status::Complete: return "complete";
    case DerivationNode::Status::DeadEnd: return "dead-end";
    case DerivationNode::Status::Truncated: return "truncated";
  }
  return "?";
}

namespace {

bool starts_with(std::span<const PhonemeId> word, std::size_t pos,
                 std::span<const PhonemeId> form) {
  return word.size() - pos >= form.size() &&
         std::equal(form.begin(), form.end(), word.begin() + static_cast<std::ptrdiff_t>(pos));
}

auto sort_key(const Segmentation& s) {
  std::vector<std::tuple<std::string, std::size_t, std::size_t, std::string>> ids;
  ids.reserve(s.pieces.size());
  for (const Piece& p : s.pieces) ids.emplace_back(p.morph_id, p.begin, p.end, p.compound_id);
  return std::make_pair(s.pieces.size(), std::move(ids));
}

class Search {
 public:
  Search(const PhonemeString& word, const Lexicon& lexicon)
      : word_(word), ids_(word.phonemes()), lexicon_(lexicon) {}

  void run(DerivationNode& tree) {
    tree.end = ids_.size();
    for (std::size_t r : lexicon_.roots_starting_with(ids_.front())) {
      const RootEntry& root = lexicon_.roots()[r];
      const auto stem = lexicon_.stem(r);
      if (!starts_with(ids_, 0, stem)) continue;

      DerivationNode& node = add_child(tree, root.id, PieceKind::Root, 0, stem.size());
      if (root.compound()) {
        node.detail = "compound";
        std::size_t pos = 0;
        for (const std::string& part : root.parts) {
          const std::size_t len = lexicon_.stem(*lexicon_.root_index(part)).size();
          pieces_.push_back(Piece{PieceKind::Root, part, pos, pos + len, root.id});
          pos += len;
        }
      } else {
        pieces_.push_back(Piece{PieceKind::Root, root.id, 0, stem.size(), {}});
      }
      verbal_ = root.verbal();
      after_root(node, stem.size());
      pieces_.clear();
      path_.pop_back();
    }
    if (tree.children.empty()) {
      tree.status = DerivationNode::Status::DeadEnd;
      tree.reason = FailureReason::NoMatch;
      tree.detail = "no root matches the start of the word";
    }
  }

  std::vector<Segmentation> results;
  std::vector<std::vector<std::size_t>> result_paths;

 private:
  DerivationNode& add_child(DerivationNode& parent, const std::string& id, PieceKind kind,
                            std::size_t begin, std::size_t end) {
    path_.push_back(parent.children.size());
    DerivationNode child;
    child.morph_id = id;
    child.kind = kind;
    child.begin = begin;
    child.end = end;
    parent.children.push_back(std::move(child));
    return parent.children.back();
  }

  static void dead(DerivationNode& node, FailureReason reason, std::string detail) {
    node.status = DerivationNode::Status::DeadEnd;
    node.reason = reason;
    node.detail = std::move(detail);
  }

  void after_root(DerivationNode& node, std::size_t pos) {
    if (verbal_ && pos < ids_.size()) {
      for (std::size_t r : lexicon_.roots_starting_with(ids_[pos])) {
        const RootEntry& noun = lexicon_.roots()[r];
        if (!noun.incorporable || noun.compound()) continue;
        const auto stem = lexicon_.stem(r);
        if (!starts_with(ids_, pos, stem)) continue;
        DerivationNode& child = add_child(node, noun.id, PieceKind::Root, pos, pos + stem.size());
        child.detail = "incorporated";
        pieces_.push_back(Piece{PieceKind::Root, noun.id, pos, pos + stem.size(), {}});
        extend(child, pos + stem.size(), 0);
        pieces_.pop_back();
        path_.pop_back();
      }
    }
    extend(node, pos, 0);
  }

  bool excluded(const SuffixEntry& s) const {
    for (std::size_t i : used_) {
      const SuffixEntry& u = lexicon_.suffixes()[i];
      if (std::binary_search(s.excludes_ids.begin(), s.excludes_ids.end(), u.id) ||
          std::binary_search(u.excludes_ids.begin(), u.excludes_ids.end(), s.id)) {
        return true;
      }
    }
    return false;
  }

  void extend(DerivationNode& node, std::size_t pos, int last_slot) {
    if (pos == ids_.size()) {
      finish(node);
      return;
    }
    if (!pieces_.empty() && pieces_.back().kind == PieceKind::Ending) {
      // Endings close the word.
      DerivationNode& leaf = add_child(node, {}, PieceKind::Suffix, pos, pos);
      dead(leaf, FailureReason::SlotOrder, "material after an ending");
      path_.pop_back();
      return;
    }
    bool matched = false;
    for (std::size_t si : lexicon_.suffixes_starting_with(ids_[pos])) {
      const SuffixEntry& s = lexicon_.suffixes()[si];
      const auto form = lexicon_.form(si);
      if (!starts_with(ids_, pos, form)) continue;
      matched = true;
      const PieceKind kind = s.kind == SuffixKind::Ending ? PieceKind::Ending : PieceKind::Suffix;
      DerivationNode& child = add_child(node, s.id, kind, pos, pos + form.size());
      if (s.slot <= last_slot) {
        dead(child, FailureReason::SlotOrder,
             "slot " + std::to_string(s.slot) + " after slot " + std::to_string(last_slot));
      } else if (excluded(s)) {
        dead(child, FailureReason::Compatibility, "excluded together with an earlier suffix");
      } else {
        pieces_.push_back(Piece{kind, s.id, pos, pos + form.size(), {}});
        used_.push_back(si);
        extend(child, pos + form.size(), s.slot);
        used_.pop_back();
        pieces_.pop_back();
      }
      path_.pop_back();
    }
    if (!matched) {
      if (node.children.empty()) {
        dead(node, FailureReason::NoMatch, "no suffix matches at " + std::to_string(pos));
      } else {
        DerivationNode& leaf = add_child(node, {}, PieceKind::Suffix, pos, pos);
        dead(leaf, FailureReason::NoMatch, "no suffix matches at " + std::to_string(pos));
        path_.pop_back();
      }
    }
  }

  void finish(DerivationNode& node) {
    for (std::size_t i : used_) {
      const SuffixEntry& s = lexicon_.suffixes()[i];
      for (const std::string& req : s.requires_ids) {
        const bool present = std::any_of(used_.begin(), used_.end(), [&](std::size_t j) {
          return lexicon_.suffixes()[j].id == req;
        });
        if (!present) {
          dead(node, FailureReason::Compatibility, "'" + s.id + "' requires '" + req + "'");
          return;
        }
      }
    }
    if (verbal_ && pieces_.back().kind != PieceKind::Ending) {
      dead(node, FailureReason::NoEnding, "verbal word without an ending");
      return;
    }
    Segmentation seg{word_, pieces_};
    if (!seen_.insert(seg.pieces).second) {
      dead(node, FailureReason::Duplicate, "same analysis as another branch");
      return;
    }
    node.status = DerivationNode::Status::Complete;
    results.push_back(std::move(seg));
    result_paths.push_back(path_);
  }

  const PhonemeString& word_;
  std::vector<PhonemeId> ids_;
  const Lexicon& lexicon_;
  std::vector<Piece> pieces_;
  std::vector<std::size_t> used_;
  std::vector<std::size_t> path_;
  bool verbal_ = false;
  std::set<std::vector<Piece>, decltype([](const std::vector<Piece>& a,
                                            const std::vector<Piece>& b) {
             return std::lexicographical_compare(
                 a.begin(), a.end(), b.begin(), b.end(), [](const Piece& x, const Piece& y) {
                   return std::tie(x.morph_id, x.begin, x.end, x.compound_id) <
                          std::tie(y.morph_id, y.begin, y.end, y.compound_id);
                 });
           })>
      seen_;
};

DerivationNode& node_at(DerivationNode& tree, const std::vector<std::size_t>& path) {
  DerivationNode* node = &tree;
  for (std::size_t i : path) node = &node->children[i];
  return *node;
}

void collect_failures(const DerivationNode& node, const std::string& prefix,
                      std::vector<std::string>& out) {
  std::string here = prefix;
  if (!node.morph_id.empty()) here += (here.empty() ? "" : "-") + node.morph_id;
  if (node.status == DerivationNode::Status::DeadEnd) {
    std::string line = std::string(to_string(node.reason)) + " at " +
                       std::to_string(node.morph_id.empty() ? node.begin : node.end);
    if (!here.empty()) line += " after " + here;
    if (!node.detail.empty()) line += ": " + node.detail;
    if (std::find(out.begin(), out.end(), line) == out.end()) out.push_back(std::move(line));
  }
  for (const DerivationNode& child : node.children) collect_failures(child, here, out);
}

}  // namespace

std::vector<std::string> Analysis::failures() const {
  std::vector<std::string> out;
  collect_failures(tree, {}, out);
  return out;
}

Analysis segment(const PhonemeString& word, const Lexicon& lexicon,
                 const SegmentOptions& options) {
  Analysis analysis;
  if (word.empty() || word.has_literals()) {
    analysis.tree.status = DerivationNode::Status::DeadEnd;
    analysis.tree.reason = FailureReason::NoMatch;
    analysis.tree.detail =
        word.empty() ? "empty word" : "word contains characters outside the alphabet";
    return analysis;
  }

  Search search(word, lexicon);
  search.run(analysis.tree);

  std::vector<std::size_t> order(search.results.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sort_key(search.results[a]) < sort_key(search.results[b]);
  });
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k < options.max_segmentations) {
      analysis.segmentations.push_back(std::move(search.results[order[k]]));
    } else {
      analysis.truncated = true;
      DerivationNode& leaf = node_at(analysis.tree, search.result_paths[order[k]]);
      leaf.status = DerivationNode::Status::Truncated;
    }
  }
  return analysis;
}

std::vector<PhraseItem> segment_phrase(std::span<const PhonemeString> words,
                                       const Lexicon& lexicon, const SegmentOptions& options) {
  std::vector<PhraseItem> out;
  out.reserve(words.size());
  for (const PhonemeString& w : words) {
    PhraseItem item;
    item.text = w;
    item.is_word = std::any_of(w.tokens.begin(), w.tokens.end(),
                               [](const Token& t) { return t.is_phoneme(); });
    if (item.is_word) item.analysis = segment(w, lexicon, options);
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace kawin

#include "kawin/glosser.hpp"

#include <algorithm>
#include <sstream>

#include "kawin/unicode.hpp"

namespace kawin {

using nlohmann::json;

std::string_view to_string(LineKind kind) {
  switch (kind) {
    case LineKind::Root: return "root";
    case LineKind::Suffix: return "suffix";
    case LineKind::Ending: return "ending";
    case LineKind::Combination: return "combination";
  }
  return "?";
}

std::string GlossedAnalysis::header() const {
  std::string out;
  for (std::size_t i = 0; i < piece_surfaces.size(); ++i) {
    if (i) out += '-';
    out += piece_surfaces[i];
  }
  return out;
}

namespace {

PhonemeString slice(const PhonemeString& word, std::size_t begin, std::size_t end) {
  PhonemeString out;
  std::size_t k = 0;
  for (const Token& t : word.tokens) {
    if (!t.is_phoneme()) continue;
    if (k >= begin && k < end) out.tokens.push_back(t);
    ++k;
  }
  return out;
}

bool is_suffix_piece(const Piece& p) { return p.kind != PieceKind::Root; }

struct Group {
  std::size_t first;
  std::size_t count;
  const CombinationRule* rule;
};

std::vector<Group> group_pieces(const std::vector<Piece>& pieces, const Lexicon& lexicon) {
  std::vector<const CombinationRule*> rules;
  for (const CombinationRule& c : lexicon.combos()) rules.push_back(&c);
  std::stable_sort(rules.begin(), rules.end(), [](const auto* a, const auto* b) {
    return a->sequence.size() > b->sequence.size();
  });

  std::vector<bool> claimed(pieces.size(), false);
  std::vector<Group> groups;
  for (const CombinationRule* rule : rules) {
    const std::size_t len = rule->sequence.size();
    std::size_t i = 0;
    while (i + len <= pieces.size()) {
      bool fits = true;
      for (std::size_t k = 0; k < len && fits; ++k) {
        const Piece& p = pieces[i + k];
        fits = !claimed[i + k] && is_suffix_piece(p) && p.morph_id == rule->sequence[k];
      }
      if (fits) {
        for (std::size_t k = 0; k < len; ++k) claimed[i + k] = true;
        groups.push_back({i, len, rule});
        i += len;
      } else {
        ++i;
      }
    }
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!claimed[i]) groups.push_back({i, 1, nullptr});
  }
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) { return a.first < b.first; });
  return groups;
}

const GlossEntry& require_gloss(const Lexicon& lexicon, const std::string& gloss_id,
                                const std::string& owner) {
  const GlossEntry* g = lexicon.find_gloss(gloss_id);
  if (!g) throw GlossError("no gloss '" + gloss_id + "' for " + owner);
  return *g;
}

// Joins line surfaces so that tokenizing the result gives back the word,
// adding a boundary mark where two surfaces would fuse into one grapheme.
void separate_fusing_surfaces(std::vector<GlossLine>& lines, Orthography display,
                              const Inventory& inventory) {
  for (std::size_t k = 0; k + 1 < lines.size(); ++k) {
    try {
      PhonemeString apart = tokenize(lines[k].surface, display, inventory);
      const PhonemeString next = tokenize(lines[k + 1].surface, display, inventory);
      apart.tokens.insert(apart.tokens.end(), next.tokens.begin(), next.tokens.end());
      const PhonemeString joined =
          tokenize(lines[k].surface + lines[k + 1].surface, display, inventory);
      if (!(joined == apart)) lines[k].surface += unicode::encode(unicode::kBoundaryMark);
    } catch (const TokenizeError&) {
      lines[k].surface += unicode::encode(unicode::kBoundaryMark);
    }
  }
}

}  // namespace

GlossedAnalysis gloss(const Segmentation& seg, const Lexicon& lexicon, const Inventory& inventory,
                      Orthography display) {
  GlossedAnalysis out;
  out.segmentation = seg;
  out.display = display;

  const auto& pieces = seg.pieces;
  for (const Piece& p : pieces) {
    const bool known = p.kind == PieceKind::Root ? lexicon.find_root(p.morph_id) != nullptr
                                                 : lexicon.find_suffix(p.morph_id) != nullptr;
    if (!known) throw GlossError("unknown morph '" + p.morph_id + "'");
    out.piece_surfaces.push_back(
        render(slice(seg.word, p.begin, p.end), display, inventory).text);
  }

  for (const Group& g : group_pieces(pieces, lexicon)) {
    GlossLine line;
    line.first_piece = g.first;
    line.piece_count = g.count;
    const Piece& first = pieces[g.first];
    const Piece& last = pieces[g.first + g.count - 1];
    line.surface = render(slice(seg.word, first.begin, last.end), display, inventory).text;
    for (std::size_t k = 0; k < g.count; ++k) line.morph_ids.push_back(pieces[g.first + k].morph_id);

    std::string citation_tail;
    if (g.rule) {
      line.kind = LineKind::Combination;
      line.rule_id = g.rule->id;
      line.gloss = require_gloss(lexicon, g.rule->gloss_id, "rule '" + g.rule->id + "'");
    } else if (first.kind == PieceKind::Root) {
      line.kind = LineKind::Root;
      const RootEntry& root = *lexicon.find_root(first.morph_id);
      line.gloss = require_gloss(lexicon, root.gloss_id, "root '" + root.id + "'");
      const auto stem = root.stem.phonemes();
      const auto citation = root.citation_form.phonemes();
      if (g.first == 0 && first.compound_id.empty() && citation.size() > stem.size() &&
          std::equal(stem.begin(), stem.end(), citation.begin())) {
        citation_tail =
            "(" +
            render(slice(root.citation_form, stem.size(), citation.size()), display, inventory)
                .text +
            ")";
      }
    } else {
      const SuffixEntry& s = *lexicon.find_suffix(first.morph_id);
      line.kind = s.kind == SuffixKind::Ending ? LineKind::Ending : LineKind::Suffix;
      line.gloss = require_gloss(lexicon, s.gloss_id, "suffix '" + s.id + "'");
    }

    const bool is_first = g.first == 0;
    const bool is_last = g.first + g.count == pieces.size();
    bool open_right = !is_last;
    if (is_first && line.kind == LineKind::Root) {
      const RootEntry& root = *lexicon.find_root(first.morph_id);
      const RootEntry* head =
          first.compound_id.empty() ? &root : lexicon.find_root(first.compound_id);
      open_right = open_right || (head && head->verbal());
    }
    std::string label;
    if (!is_first) label += '-';
    for (std::size_t k = 0; k < g.count; ++k) {
      if (k) label += '-';
      label += out.piece_surfaces[g.first + k];
    }
    label += citation_tail;
    if (open_right) label += '-';
    line.label = std::move(label);
    out.lines.push_back(std::move(line));
  }
  separate_fusing_surfaces(out.lines, display, inventory);
  return out;
}

// --- formatting -----------------------------------------------------------

namespace {

std::string gloss_text(const GlossLine& line) {
  std::string text;
  if (line.kind == LineKind::Root && !line.gloss.tags.empty()) {
    for (std::size_t i = 0; i < line.gloss.tags.size(); ++i) {
      if (i) text += " & ";
      text += line.gloss.tags[i];
    }
    text += ' ';
  }
  return text + line.gloss.plain_es;
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t len = unicode::length(s);
  return len >= width ? s : s + std::string(width - len, ' ');
}

}  // namespace

std::string format_analysis(const GlossedAnalysis& g, Format format, const Inventory& inventory,
                            const FormatOptions& options) {
  if (format == Format::Json) return to_json(g, inventory).dump(2);

  std::size_t width = 0;
  for (const GlossLine& line : g.lines) width = std::max(width, unicode::length(line.label));
  std::ostringstream out;
  out << g.header() << '\n';
  for (const GlossLine& line : g.lines) {
    out << "  " << pad(line.label, width) << " : " << gloss_text(line) << '\n';
    if (options.english && line.gloss.plain_en) {
      out << "  " << std::string(width, ' ') << "   (" << *line.gloss.plain_en << ")\n";
    }
  }
  return out.str();
}

std::string format_no_analysis(const std::string& word, const std::vector<std::string>& failures) {
  std::string out = word + "\n  (no analysis)\n";
  for (const std::string& f : failures) out += "  - " + f + '\n';
  return out;
}

json to_json(const GlossedAnalysis& g, const Inventory& inventory) {
  json phonemes = json::array();
  json capitalized = json::array();
  std::size_t k = 0;
  for (const Token& t : g.segmentation.word.tokens) {
    if (!t.is_phoneme()) continue;
    phonemes.push_back(inventory.id(t.phoneme));
    if (t.capitalized) capitalized.push_back(k);
    ++k;
  }

  json pieces = json::array();
  for (std::size_t i = 0; i < g.segmentation.pieces.size(); ++i) {
    const Piece& p = g.segmentation.pieces[i];
    json jp = {{"morph_id", p.morph_id},
               {"kind", to_string(p.kind)},
               {"start", p.begin},
               {"end", p.end},
               {"surface", i < g.piece_surfaces.size() ? g.piece_surfaces[i] : ""}};
    if (!p.compound_id.empty()) jp["compound_id"] = p.compound_id;
    pieces.push_back(std::move(jp));
  }

  json lines = json::array();
  for (const GlossLine& line : g.lines) {
    json jl = {{"kind", to_string(line.kind)},
               {"surface", line.surface},
               {"label", line.label},
               {"morph_ids", line.morph_ids},
               {"gloss_id", line.gloss.id},
               {"gloss_es", line.gloss.plain_es},
               {"tags", line.gloss.tags},
               {"first_piece", line.first_piece},
               {"piece_count", line.piece_count}};
    if (line.gloss.plain_en) jl["gloss_en"] = *line.gloss.plain_en;
    if (!line.rule_id.empty()) jl["rule_id"] = line.rule_id;
    lines.push_back(std::move(jl));
  }

  return json{{"header", g.header()},
              {"display_orthography", to_string(g.display)},
              {"phonemes", std::move(phonemes)},
              {"capitalized", std::move(capitalized)},
              {"pieces", std::move(pieces)},
              {"lines", std::move(lines)},
              {"context_free", g.context_free}};
}

namespace {

template <typename E>
E enum_from(const std::string& name, std::initializer_list<E> values) {
  for (E v : values) {
    if (to_string(v) == name) return v;
  }
  throw GlossError("unknown kind '" + name + "'");
}

}  // namespace

GlossedAnalysis glossed_from_json(const json& j, const Inventory& inventory) {
  try {
    GlossedAnalysis g;
    auto display = parse_orthography(j.at("display_orthography").get<std::string>());
    if (!display) throw GlossError("bad display_orthography");
    g.display = *display;
    g.context_free = j.at("context_free").get<bool>();

    const auto ids = j.at("phonemes").get<std::vector<std::string>>();
    const auto caps = j.at("capitalized").get<std::vector<std::size_t>>();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto p = inventory.find(ids[i]);
      if (!p) throw GlossError("unknown phoneme '" + ids[i] + "'");
      g.segmentation.word.push_phoneme(*p,
                                       std::find(caps.begin(), caps.end(), i) != caps.end());
    }
    for (const json& jp : j.at("pieces")) {
      Piece p;
      p.morph_id = jp.at("morph_id").get<std::string>();
      p.kind = enum_from(jp.at("kind").get<std::string>(),
                         {PieceKind::Root, PieceKind::Suffix, PieceKind::Ending});
      p.begin = jp.at("start").get<std::size_t>();
      p.end = jp.at("end").get<std::size_t>();
      p.compound_id = jp.value("compound_id", std::string{});
      g.segmentation.pieces.push_back(std::move(p));
      g.piece_surfaces.push_back(jp.at("surface").get<std::string>());
    }
    for (const json& jl : j.at("lines")) {
      GlossLine line;
      line.kind = enum_from(jl.at("kind").get<std::string>(),
                            {LineKind::Root, LineKind::Suffix, LineKind::Ending,
                             LineKind::Combination});
      line.surface = jl.at("surface").get<std::string>();
      line.label = jl.at("label").get<std::string>();
      line.morph_ids = jl.at("morph_ids").get<std::vector<std::string>>();
      line.rule_id = jl.value("rule_id", std::string{});
      line.gloss.id = jl.at("gloss_id").get<std::string>();
      line.gloss.plain_es = jl.at("gloss_es").get<std::string>();
      if (jl.contains("gloss_en")) line.gloss.plain_en = jl.at("gloss_en").get<std::string>();
      line.gloss.tags = jl.at("tags").get<std::vector<std::string>>();
      line.first_piece = jl.at("first_piece").get<std::size_t>();
      line.piece_count = jl.at("piece_count").get<std::size_t>();
      g.lines.push_back(std::move(line));
    }
    return g;
  } catch (const json::exception& e) {
    throw GlossError(std::string("malformed analysis JSON: ") + e.what());
  }
}

}  // namespace kawin

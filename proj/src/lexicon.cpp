#include "kawin/lexicon.hpp"

#include <algorithm>
#include <set>

#include "kawin/unicode.hpp"
#include "tsv.hpp"

namespace kawin {

std::string_view to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::VerbIntransitive: return "vi";
    case PartOfSpeech::VerbTransitive: return "vtr";
    case PartOfSpeech::Noun: return "s";
    case PartOfSpeech::Adjective: return "adj";
    case PartOfSpeech::Adverb: return "adv";
  }
  return "?";
}

std::optional<PartOfSpeech> parse_part_of_speech(std::string_view label) {
  for (auto pos : {PartOfSpeech::VerbIntransitive, PartOfSpeech::VerbTransitive,
                   PartOfSpeech::Noun, PartOfSpeech::Adjective, PartOfSpeech::Adverb}) {
    if (label == to_string(pos)) return pos;
  }
  return std::nullopt;
}

std::string_view to_string(SuffixKind kind) {
  return kind == SuffixKind::Ending ? "ending" : "suffix";
}

bool RootEntry::verbal() const {
  return !pos.empty() && std::all_of(pos.begin(), pos.end(), [](PartOfSpeech p) {
    return p == PartOfSpeech::VerbIntransitive || p == PartOfSpeech::VerbTransitive;
  });
}

namespace {

template <typename Map>
void index_unique(Map& map, const std::string& id, std::size_t i, std::string_view what) {
  if (id.empty()) throw LoadError(std::string(what) + " with empty id");
  if (!map.emplace(id, i).second) {
    throw LoadError("duplicate " + std::string(what) + " id '" + id + "'");
  }
}

std::vector<PhonemeId> plain_phonemes(const PhonemeString& p, const std::string& what) {
  if (p.has_literals()) throw LoadError(what + " contains non-letter characters");
  return p.phonemes();
}

}  // namespace

Lexicon::Lexicon(LexiconData data) : data_(std::move(data)) {
  for (std::size_t i = 0; i < data_.glosses.size(); ++i) {
    const GlossEntry& g = data_.glosses[i];
    index_unique(gloss_ids_, g.id, i, "gloss");
    if (g.plain_es.empty()) throw LoadError("gloss '" + g.id + "' has an empty Spanish text");
  }
  auto require_gloss = [&](const std::string& owner, const std::string& gloss_id) {
    if (!gloss_ids_.contains(gloss_id)) {
      throw LoadError(owner + ": gloss '" + gloss_id + "' not found");
    }
  };

  for (std::size_t i = 0; i < data_.roots.size(); ++i) {
    const RootEntry& r = data_.roots[i];
    index_unique(root_ids_, r.id, i, "root");
    const std::string owner = "root '" + r.id + "'";
    stems_.push_back(plain_phonemes(r.stem, owner + " stem"));
    if (stems_.back().empty()) throw LoadError(owner + ": empty stem");
    if (r.citation_form.empty()) throw LoadError(owner + ": empty citation form");
    if (r.pos.empty()) throw LoadError(owner + ": no part of speech");
    require_gloss(owner, r.gloss_id);
  }
  for (const RootEntry& r : data_.roots) {
    if (!r.compound()) continue;
    const std::string owner = "root '" + r.id + "'";
    std::vector<PhonemeId> joined;
    for (const std::string& part : r.parts) {
      auto it = root_ids_.find(part);
      if (it == root_ids_.end()) throw LoadError(owner + ": part '" + part + "' not found");
      const RootEntry& p = data_.roots[it->second];
      if (p.compound() || p.id == r.id) {
        throw LoadError(owner + ": part '" + part + "' is itself a compound");
      }
      joined.insert(joined.end(), stems_[it->second].begin(), stems_[it->second].end());
    }
    if (r.parts.size() < 2) throw LoadError(owner + ": a compound needs at least two parts");
    if (joined != stems_[root_ids_.at(r.id)]) {
      throw LoadError(owner + ": parts do not spell the stem");
    }
  }

  int max_suffix_slot = 0;
  int min_ending_slot = INT32_MAX;
  for (std::size_t i = 0; i < data_.suffixes.size(); ++i) {
    const SuffixEntry& s = data_.suffixes[i];
    index_unique(suffix_ids_, s.id, i, "suffix");
    const std::string owner = "suffix '" + s.id + "'";
    if (root_ids_.contains(s.id)) throw LoadError(owner + ": id is also a root id");
    forms_.push_back(plain_phonemes(s.form, owner + " form"));
    if (forms_.back().empty()) throw LoadError(owner + ": empty form");
    if (s.slot < 1) throw LoadError(owner + ": slot must be >= 1");
    require_gloss(owner, s.gloss_id);
    if (s.kind == SuffixKind::Ending) {
      min_ending_slot = std::min(min_ending_slot, s.slot);
    } else {
      max_suffix_slot = std::max(max_suffix_slot, s.slot);
    }
  }
  if (min_ending_slot == INT32_MAX) throw LoadError("the suffix inventory has no endings");
  if (min_ending_slot <= max_suffix_slot) {
    throw LoadError("ending slots must be above every suffix slot (lowest ending slot " +
                    std::to_string(min_ending_slot) + ", highest suffix slot " +
                    std::to_string(max_suffix_slot) + ")");
  }
  for (SuffixEntry& s : data_.suffixes) {
    const std::string owner = "suffix '" + s.id + "'";
    for (auto* list : {&s.requires_ids, &s.excludes_ids}) {
      std::sort(list->begin(), list->end());
      list->erase(std::unique(list->begin(), list->end()), list->end());
      for (const std::string& ref : *list) {
        if (ref == s.id) throw LoadError(owner + ": refers to itself in requires/excludes");
        if (!suffix_ids_.contains(ref)) {
          throw LoadError(owner + ": requires/excludes unknown suffix '" + ref + "'");
        }
      }
    }
    std::vector<std::string> both;
    std::set_intersection(s.requires_ids.begin(), s.requires_ids.end(), s.excludes_ids.begin(),
                          s.excludes_ids.end(), std::back_inserter(both));
    if (!both.empty()) {
      throw LoadError(owner + ": '" + both.front() + "' is both required and excluded");
    }
  }

  std::set<std::vector<std::string>> sequences;
  std::map<std::string, std::size_t, std::less<>> combo_ids;
  for (std::size_t i = 0; i < data_.combos.size(); ++i) {
    const CombinationRule& c = data_.combos[i];
    index_unique(combo_ids, c.id, i, "combination rule");
    const std::string owner = "combination rule '" + c.id + "'";
    if (c.sequence.size() < 2) throw LoadError(owner + ": needs at least two suffixes");
    for (const std::string& ref : c.sequence) {
      if (!suffix_ids_.contains(ref)) throw LoadError(owner + ": unknown suffix '" + ref + "'");
    }
    require_gloss(owner, c.gloss_id);
    if (!sequences.insert(c.sequence).second) throw LoadError(owner + ": duplicate sequence");
  }

  for (std::size_t i = 0; i < stems_.size(); ++i) roots_by_first_[stems_[i].front()].push_back(i);
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    suffixes_by_first_[forms_[i].front()].push_back(i);
  }
}

const RootEntry* Lexicon::find_root(std::string_view id) const {
  auto i = root_index(id);
  return i ? &data_.roots[*i] : nullptr;
}

const SuffixEntry* Lexicon::find_suffix(std::string_view id) const {
  auto i = suffix_index(id);
  return i ? &data_.suffixes[*i] : nullptr;
}

const GlossEntry* Lexicon::find_gloss(std::string_view id) const {
  auto it = gloss_ids_.find(id);
  return it == gloss_ids_.end() ? nullptr : &data_.glosses[it->second];
}

std::optional<std::size_t> Lexicon::root_index(std::string_view id) const {
  auto it = root_ids_.find(id);
  if (it == root_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Lexicon::suffix_index(std::string_view id) const {
  auto it = suffix_ids_.find(id);
  if (it == suffix_ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::size_t> Lexicon::roots_starting_with(PhonemeId first) const {
  auto it = roots_by_first_.find(first);
  if (it == roots_by_first_.end()) return {};
  return it->second;
}

std::span<const std::size_t> Lexicon::suffixes_starting_with(PhonemeId first) const {
  auto it = suffixes_by_first_.find(first);
  if (it == suffixes_by_first_.end()) return {};
  return it->second;
}

// --- loading --------------------------------------------------------------

namespace {

std::vector<std::string> list_cell(const std::string& cell, char sep) {
  std::vector<std::string> out;
  if (cell.empty() || cell == "-") return out;
  for (const std::string& item : tsv::split(cell, sep)) {
    std::string s = tsv::strip(item);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

PhonemeString ragileo_form(const std::string& text, const Inventory& inventory,
                           const std::string& where) {
  try {
    return tokenize(text, Orthography::Ragileo, inventory);
  } catch (const TokenizeError& e) {
    throw LoadError(where + ": '" + text + "' is not Ragileo (" + e.what() + ")");
  }
}

bool parse_flag(const std::string& cell, const std::string& where) {
  if (cell == "yes" || cell == "1" || cell == "true") return true;
  if (cell.empty() || cell == "no" || cell == "0" || cell == "false" || cell == "-") return false;
  throw LoadError(where + ": expected yes/no, got '" + cell + "'");
}

}  // namespace

Lexicon load_lexicon(const std::filesystem::path& dir, const Inventory& inventory) {
  LexiconData data;
  try {
    {
      const tsv::Table t = tsv::read(dir / "glosses.tsv");
      const auto id = t.require_column("id"), es = t.require_column("plain_es"),
                 en = t.require_column("plain_en"), tags = t.require_column("tags");
      for (const tsv::Row& row : t.rows) {
        GlossEntry g;
        g.id = row.cell(id);
        g.plain_es = unicode::nfc(row.cell(es));
        if (!row.cell(en).empty() && row.cell(en) != "-") g.plain_en = unicode::nfc(row.cell(en));
        g.tags = list_cell(row.cell(tags), ',');
        data.glosses.push_back(std::move(g));
      }
    }
    {
      const tsv::Table t = tsv::read(dir / "roots.tsv");
      const auto id = t.require_column("id"), cit = t.require_column("citation"),
                 stem = t.require_column("stem"), pos = t.require_column("pos"),
                 inc = t.require_column("incorporable"), gloss = t.require_column("gloss_id");
      const auto parts = t.column("parts");
      for (const tsv::Row& row : t.rows) {
        const std::string where = t.source + ":" + std::to_string(row.line);
        RootEntry r;
        r.id = row.cell(id);
        r.citation_form = ragileo_form(row.cell(cit), inventory, where);
        r.stem = ragileo_form(row.cell(stem), inventory, where);
        for (const std::string& label : list_cell(row.cell(pos), ',')) {
          auto p = parse_part_of_speech(label);
          if (!p) throw LoadError(where + ": unknown part of speech '" + label + "'");
          r.pos.push_back(*p);
        }
        r.incorporable = parse_flag(row.cell(inc), where);
        r.gloss_id = row.cell(gloss);
        if (parts != std::string::npos) r.parts = list_cell(row.cell(parts), '|');
        data.roots.push_back(std::move(r));
      }
    }
    {
      const tsv::Table t = tsv::read(dir / "suffixes.tsv");
      const auto id = t.require_column("id"), form = t.require_column("form"),
                 slot = t.require_column("slot"), kind = t.require_column("kind"),
                 gloss = t.require_column("gloss_id"), req = t.require_column("requires"),
                 exc = t.require_column("excludes");
      for (const tsv::Row& row : t.rows) {
        const std::string where = t.source + ":" + std::to_string(row.line);
        SuffixEntry s;
        s.id = row.cell(id);
        s.form = ragileo_form(row.cell(form), inventory, where);
        try {
          std::size_t used = 0;
          s.slot = std::stoi(row.cell(slot), &used);
          if (used != row.cell(slot).size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw LoadError(where + ": slot '" + row.cell(slot) + "' is not an integer");
        }
        if (row.cell(kind) == "suffix") {
          s.kind = SuffixKind::Suffix;
        } else if (row.cell(kind) == "ending") {
          s.kind = SuffixKind::Ending;
        } else {
          throw LoadError(where + ": kind must be suffix or ending");
        }
        s.gloss_id = row.cell(gloss);
        s.requires_ids = list_cell(row.cell(req), ',');
        s.excludes_ids = list_cell(row.cell(exc), ',');
        data.suffixes.push_back(std::move(s));
      }
    }
    {
      const tsv::Table t = tsv::read(dir / "combos.tsv");
      const auto id = t.require_column("id"), seq = t.require_column("sequence"),
                 gloss = t.require_column("gloss_id");
      for (const tsv::Row& row : t.rows) {
        CombinationRule c;
        c.id = row.cell(id);
        c.sequence = list_cell(row.cell(seq), ' ');
        c.gloss_id = row.cell(gloss);
        data.combos.push_back(std::move(c));
      }
    }
  } catch (const EncodingError& e) {
    throw LoadError(dir.string() + ": " + e.what());
  }
  return Lexicon(std::move(data));
}

std::vector<std::string> validate_lexicon(const Lexicon& lexicon) {
  std::vector<std::string> warnings;
  const auto& suffixes = lexicon.suffixes();

  for (std::size_t i = 0; i < suffixes.size(); ++i) {
    for (std::size_t j = i + 1; j < suffixes.size(); ++j) {
      if (suffixes[i].slot == suffixes[j].slot && suffixes[i].form == suffixes[j].form) {
        warnings.push_back("suffixes '" + suffixes[i].id + "' and '" + suffixes[j].id +
                           "' share form and slot " + std::to_string(suffixes[i].slot));
      }
    }
  }

  for (const CombinationRule& c : lexicon.combos()) {
    int last = 0;
    for (std::size_t k = 0; k < c.sequence.size(); ++k) {
      const SuffixEntry* s = lexicon.find_suffix(c.sequence[k]);
      const bool ending_inside = s->kind == SuffixKind::Ending && k + 1 < c.sequence.size();
      if (s->slot <= last || ending_inside) {
        warnings.push_back("combination rule '" + c.id +
                           "' is unreachable: its suffixes are not in strictly increasing "
                           "slot order");
        break;
      }
      last = s->slot;
    }
  }

  std::set<std::string> used;
  for (const RootEntry& r : lexicon.roots()) used.insert(r.gloss_id);
  for (const SuffixEntry& s : suffixes) used.insert(s.gloss_id);
  for (const CombinationRule& c : lexicon.combos()) used.insert(c.gloss_id);
  for (const GlossEntry& g : lexicon.glosses()) {
    if (!used.contains(g.id)) warnings.push_back("gloss '" + g.id + "' is never referenced");
  }
  return warnings;
}

}  // namespace kawin

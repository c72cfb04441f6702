#include "kawin/grapheme.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "kawin/unicode.hpp"
#include "tsv.hpp"

namespace kawin {

namespace {

constexpr char32_t kCombiningLowLine = U'̲';

std::u32string capitalize(std::u32string text) {
  if (!text.empty()) text[0] = unicode::to_upper(text[0]);
  return text;
}

}  // namespace

std::string_view to_string(Orthography o) {
  switch (o) {
    case Orthography::Ragileo: return "ragileo";
    case Orthography::Unificado: return "unificado";
    case Orthography::Azumchefe: return "azumchefe";
  }
  return "unknown";
}

std::string_view display_name(Orthography o) {
  switch (o) {
    case Orthography::Ragileo: return "Ragileo";
    case Orthography::Unificado: return "Unificado";
    case Orthography::Azumchefe: return "Azümchefe";
  }
  return "unknown";
}

std::optional<Orthography> parse_orthography(std::string_view name) {
  std::string key;
  try {
    key = unicode::encode(unicode::fold(unicode::decode(name)));
  } catch (const EncodingError&) {
    return std::nullopt;
  }
  for (Orthography o : kAllOrthographies) {
    if (key == to_string(o)) return o;
    if (key == unicode::encode(unicode::fold(unicode::decode(display_name(o))))) return o;
  }
  return std::nullopt;
}

Orthography orthography_from_string(std::string_view name) {
  if (auto o = parse_orthography(name)) return *o;
  throw std::invalid_argument("unknown orthography '" + std::string(name) +
                              "' (expected ragileo, unificado or azumchefe)");
}

// --- PhonemeString --------------------------------------------------------

void PhonemeString::push_phoneme(PhonemeId id, bool capitalized) {
  Token t;
  t.kind = Token::Kind::Phoneme;
  t.phoneme = id;
  t.capitalized = capitalized;
  tokens.push_back(std::move(t));
}

void PhonemeString::push_literal(std::string text) {
  Token t;
  t.kind = Token::Kind::Literal;
  t.surface = text;
  t.literal = std::move(text);
  tokens.push_back(std::move(t));
}

bool PhonemeString::has_literals() const {
  return std::any_of(tokens.begin(), tokens.end(),
                     [](const Token& t) { return !t.is_phoneme(); });
}

std::vector<PhonemeId> PhonemeString::phonemes() const {
  std::vector<PhonemeId> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) {
    if (t.is_phoneme()) out.push_back(t.phoneme);
  }
  return out;
}

PhonemeString PhonemeString::lowercased() const {
  PhonemeString out = *this;
  for (Token& t : out.tokens) t.capitalized = false;
  return out;
}

// --- errors ---------------------------------------------------------------

TokenizeError::TokenizeError(Orthography orthography, std::size_t offset,
                             std::size_t byte_offset, std::string substring)
    : Error("'" + substring + "' at offset " + std::to_string(offset) +
            " is not a grapheme of " + std::string(display_name(orthography))),
      orthography_(orthography),
      offset_(offset),
      byte_offset_(byte_offset),
      substring_(std::move(substring)) {}

RenderError::RenderError(Orthography orthography, std::string phoneme)
    : Error("phoneme '" + phoneme + "' has no grapheme or fallback in " +
            std::string(display_name(orthography))),
      orthography_(orthography),
      phoneme_(std::move(phoneme)) {}

// --- GraphemeTable --------------------------------------------------------

GraphemeTable::GraphemeTable(Orthography orthography, std::vector<GraphemeEntry> entries)
    : orthography_(orthography), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const GraphemeEntry& e = entries_[i];
    if (!e.represented()) continue;
    std::vector<std::string> spellings{e.grapheme};
    spellings.insert(spellings.end(), e.alternates.begin(), e.alternates.end());
    for (const std::string& s : spellings) {
      std::u32string key = unicode::fold(unicode::decode(s));
      max_length_ = std::max(max_length_, key.size());
      auto [it, inserted] =
          lookup_.emplace(std::move(key), PhonemeId{static_cast<std::uint16_t>(i)});
      if (!inserted && it->second.value != i) {
        throw LoadError(std::string(display_name(orthography)) + ": grapheme '" + s +
                        "' assigned to two phonemes");
      }
    }
  }
}

const GraphemeEntry& GraphemeTable::entry(PhonemeId id) const {
  if (id.value >= entries_.size()) throw std::out_of_range("phoneme id out of range");
  return entries_[id.value];
}

std::optional<Match> GraphemeTable::longest_match(std::u32string_view text,
                                                  std::size_t pos) const {
  const std::size_t limit = std::min(max_length_, text.size() - pos);
  std::u32string key;
  for (std::size_t len = limit; len >= 1; --len) {
    const std::size_t end = pos + len;
    if (end < text.size() && unicode::is_combining_mark(text[end])) continue;
    key = unicode::fold(text.substr(pos, len));
    if (auto it = lookup_.find(key); it != lookup_.end()) {
      return Match{it->second, len};
    }
  }
  return std::nullopt;
}

// --- Inventory ------------------------------------------------------------

namespace {

struct RowSpelling {
  std::string spelling;
  std::size_t line;
  std::string id;
};

}  // namespace

Inventory Inventory::parse(std::string_view text, const InventoryOptions& options) {
  const tsv::Table table = tsv::parse(text, "phonemes.tsv");
  const std::size_t id_col = table.require_column("id");
  std::array<std::size_t, 3> cols{};
  for (Orthography o : kAllOrthographies) {
    cols[static_cast<std::size_t>(o)] = table.require_column(to_string(o));
  }
  const std::size_t fallback_col = table.column("fallbacks");

  Inventory inv;
  std::array<std::vector<GraphemeEntry>, 3> entries;
  std::map<std::string, std::size_t> seen_ids;
  std::array<std::map<std::u32string, RowSpelling>, 3> seen_spellings;

  if (table.rows.size() > 0xFFFF) throw LoadError("phoneme inventory too large");

  for (const tsv::Row& row : table.rows) {
    const std::string id = unicode::nfc(row.cell(id_col));
    const std::string where = table.source + ":" + std::to_string(row.line);
    if (id.empty()) throw LoadError(where + ": empty phoneme id");
    if (auto [it, ok] = seen_ids.emplace(id, row.line); !ok) {
      throw LoadError(where + ": duplicate phoneme id '" + id + "' (first on line " +
                      std::to_string(it->second) + ")");
    }
    inv.ids_.push_back(id);

    std::map<Orthography, std::string> fallbacks;
    if (fallback_col != std::string::npos && !row.cell(fallback_col).empty()) {
      for (const std::string& pair : tsv::split(row.cell(fallback_col), ',')) {
        const std::string item = tsv::strip(pair);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
          throw LoadError(where + ": fallback '" + item + "' is not orthography=grapheme");
        }
        auto o = parse_orthography(tsv::strip(item.substr(0, eq)));
        if (!o) throw LoadError(where + ": unknown orthography in fallback '" + item + "'");
        fallbacks[*o] = unicode::nfc(tsv::strip(item.substr(eq + 1)));
      }
    }

    for (Orthography o : kAllOrthographies) {
      const auto oi = static_cast<std::size_t>(o);
      const std::string cell = unicode::nfc(row.cell(cols[oi]));
      if (cell.empty()) {
        throw LoadError(where + ": missing " + std::string(to_string(o)) + " grapheme");
      }
      GraphemeEntry entry;
      if (cell != "-") {
        auto spellings = tsv::split(cell, '|');
        entry.grapheme = tsv::strip(spellings.front());
        for (std::size_t k = 1; k < spellings.size(); ++k) {
          entry.alternates.push_back(tsv::strip(spellings[k]));
        }
      }
      if (auto it = fallbacks.find(o); it != fallbacks.end()) entry.fallback = it->second;

      if (o == Orthography::Unificado && options.unificado_plain_interdentals &&
          entry.represented()) {
        std::u32string cps = unicode::decode(entry.grapheme);
        if (cps.find(kCombiningLowLine) != std::u32string::npos) {
          std::erase(cps, kCombiningLowLine);
          entry.fallback = unicode::encode(cps);
          entry.grapheme.clear();
          entry.alternates.clear();
        }
      }

      if (!entry.represented() && !entry.fallback && options.require_fallbacks) {
        throw LoadError(where + ": phoneme '" + id + "' has no " +
                        std::string(to_string(o)) + " grapheme and no fallback");
      }

      if (entry.represented()) {
        std::vector<std::string> all{entry.grapheme};
        all.insert(all.end(), entry.alternates.begin(), entry.alternates.end());
        for (const std::string& s : all) {
          auto key = unicode::fold(unicode::decode(s));
          if (key.empty()) throw LoadError(where + ": empty grapheme");
          auto [it, ok] = seen_spellings[oi].emplace(key, RowSpelling{s, row.line, id});
          if (!ok) {
            throw LoadError(table.source + ": " + std::string(display_name(o)) +
                            " grapheme '" + s + "' is used by '" + it->second.id +
                            "' (line " + std::to_string(it->second.line) + ") and '" + id +
                            "' (line " + std::to_string(row.line) + ")");
          }
        }
      }
      entries[oi].push_back(std::move(entry));
    }
  }

  for (Orthography o : kAllOrthographies) {
    const auto oi = static_cast<std::size_t>(o);
    inv.tables_[oi] = GraphemeTable(o, std::move(entries[oi]));
  }
  return inv;
}

Inventory Inventory::load(const std::filesystem::path& file, const InventoryOptions& options) {
  try {
    return parse(tsv::read_file(file), options);
  } catch (const EncodingError& e) {
    throw LoadError(file.string() + ": " + e.what());
  }
}

const std::string& Inventory::id(PhonemeId p) const {
  if (p.value >= ids_.size()) throw std::out_of_range("phoneme id out of range");
  return ids_[p.value];
}

std::optional<PhonemeId> Inventory::find(std::string_view id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) return PhonemeId{static_cast<std::uint16_t>(i)};
  }
  return std::nullopt;
}

PhonemeId Inventory::at(std::string_view id) const {
  if (auto p = find(id)) return *p;
  throw std::out_of_range("unknown phoneme '" + std::string(id) + "'");
}

const GraphemeTable& Inventory::table(Orthography o) const {
  return tables_[static_cast<std::size_t>(o)];
}

bool Inventory::represented(PhonemeId p, Orthography o) const {
  return table(o).entry(p).represented();
}

std::vector<PhonemeId> Inventory::fully_represented() const {
  std::vector<PhonemeId> out;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    const PhonemeId p{static_cast<std::uint16_t>(i)};
    if (std::all_of(kAllOrthographies.begin(), kAllOrthographies.end(),
                    [&](Orthography o) { return represented(p, o); })) {
      out.push_back(p);
    }
  }
  return out;
}

// --- tokenize / render ----------------------------------------------------

PhonemeString tokenize(std::string_view text, Orthography orthography,
                       const Inventory& inventory) {
  const std::string normalized = unicode::nfc(text);
  const std::u32string cps = unicode::decode(normalized);
  const GraphemeTable& table = inventory.table(orthography);

  PhonemeString out;
  std::size_t byte = 0;
  std::size_t i = 0;
  auto byte_len = [&](std::size_t from, std::size_t n) {
    std::size_t b = 0;
    for (std::size_t k = from; k < from + n; ++k) b += unicode::encode(cps[k]).size();
    return b;
  };

  while (i < cps.size()) {
    const char32_t c = cps[i];
    if (c == unicode::kBoundaryMark && !out.tokens.empty() &&
        out.tokens.back().is_phoneme()) {
      out.tokens.back().surface += unicode::encode(c);
      byte += byte_len(i, 1);
      ++i;
      continue;
    }
    if (auto m = table.longest_match(cps, i)) {
      Token t;
      t.kind = Token::Kind::Phoneme;
      t.phoneme = m->phoneme;
      t.capitalized = unicode::is_upper(c);
      t.surface = unicode::encode(std::u32string_view(cps).substr(i, m->length));
      t.offset = i;
      out.tokens.push_back(std::move(t));
      byte += byte_len(i, m->length);
      i += m->length;
      continue;
    }
    if (unicode::is_letter_like(c)) {
      std::size_t end = i + 1;
      while (end < cps.size() && unicode::is_combining_mark(cps[end])) ++end;
      throw TokenizeError(orthography, i, byte,
                          unicode::encode(std::u32string_view(cps).substr(i, end - i)));
    }
    const std::string piece = unicode::encode(c);
    if (!out.tokens.empty() && !out.tokens.back().is_phoneme()) {
      out.tokens.back().literal += piece;
      out.tokens.back().surface += piece;
    } else {
      Token t;
      t.kind = Token::Kind::Literal;
      t.literal = piece;
      t.surface = piece;
      t.offset = i;
      out.tokens.push_back(std::move(t));
    }
    byte += piece.size();
    ++i;
  }
  return out;
}

RenderResult render(const PhonemeString& phonemes, Orthography orthography,
                    const Inventory& inventory) {
  const GraphemeTable& table = inventory.table(orthography);
  struct Piece {
    std::u32string text;
    bool phoneme;
    std::optional<PhonemeId> lost;
  };
  std::vector<Piece> pieces;
  pieces.reserve(phonemes.tokens.size());

  for (const Token& t : phonemes.tokens) {
    if (!t.is_phoneme()) {
      pieces.push_back({unicode::decode(t.literal), false, std::nullopt});
      continue;
    }
    if (t.phoneme.value >= inventory.size()) {
      throw RenderError(orthography, "#" + std::to_string(t.phoneme.value));
    }
    const GraphemeEntry& e = table.entry(t.phoneme);
    Piece piece{{}, true, std::nullopt};
    if (e.represented()) {
      piece.text = unicode::decode(e.grapheme);
    } else if (e.fallback) {
      piece.text = unicode::decode(*e.fallback);
      piece.lost = t.phoneme;
    } else {
      throw RenderError(orthography, inventory.id(t.phoneme));
    }
    if (t.capitalized) piece.text = capitalize(std::move(piece.text));
    pieces.push_back(std::move(piece));
  }

  // A grapheme followed by text that extends it into a longer grapheme
  // ("n" before "g" in Unificado) gets a boundary mark so that tokenizing
  // the output reproduces the input.
  RenderResult result;
  std::u32string out;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const Piece& piece = pieces[k];
    if (piece.lost) result.losses.push_back(LossNote{out.size(), *piece.lost});
    out += piece.text;
    if (!piece.phoneme || piece.text.empty() || k + 1 == pieces.size()) continue;
    std::u32string window = piece.text;
    for (std::size_t j = k + 1; j < pieces.size() && window.size() < piece.text.size() + 8; ++j) {
      window += pieces[j].text;
    }
    const auto m = table.longest_match(window, 0);
    if (m && m->length > piece.text.size()) out.push_back(unicode::kBoundaryMark);
  }
  result.text = unicode::encode(out);
  return result;
}

}  // namespace kawin

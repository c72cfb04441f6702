#include "fixtures.hpp"

namespace kawin::testing {

std::filesystem::path data_dir() { return KAWIN_TEST_DATA_DIR; }

const Inventory& default_inventory() {
  static const Inventory inv = Inventory::load(data_dir() / "phonemes.tsv");
  return inv;
}

const Lexicon& default_lexicon() {
  static const Lexicon lex = load_lexicon(data_dir() / "lexicon", default_inventory());
  return lex;
}

PhonemeString ragileo(const std::string& text) {
  return tokenize(text, Orthography::Ragileo, default_inventory());
}

}  // namespace kawin::testing

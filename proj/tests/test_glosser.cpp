#include <gtest/gtest.h>

#include <algorithm>

#include "kawin/glosser.hpp"
#include "kawin/unicode.hpp"
#include "support/checker.hpp"
#include "support/fixtures.hpp"

namespace kawin {
namespace {

using testing::checked_segment;
using testing::default_inventory;
using testing::default_lexicon;
using testing::ragileo;

GlossedAnalysis first_gloss(const std::string& ragileo_word, Orthography display,
                            const Lexicon& lex = default_lexicon()) {
  const Analysis a = checked_segment(ragileo(ragileo_word), lex);
  if (a.segmentations.empty()) throw std::runtime_error("no analysis for " + ragileo_word);
  return gloss(a.segmentations[0], lex, default_inventory(), display);
}

TEST(Gloss, WorkedExampleInAzumchefe) {
  const GlossedAnalysis g = first_gloss("xekayawkelai", Orthography::Azumchefe);
  EXPECT_EQ(g.header(), "txeka-yaw-ke-la-i");
  ASSERT_EQ(g.lines.size(), 5u);
  const std::vector<std::string> labels{"txeka(n)-", "-yaw-", "-ke-", "-la-", "-i"};
  const std::vector<std::string> glosses{"caminar, marchar, pasear", "andar", "habitualmente",
                                         "negación a modo \"normal\" indicativo", "el / ella"};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(g.lines[i].label, labels[i]);
    EXPECT_NE(g.lines[i].gloss.plain_es.find(glosses[i]), std::string::npos) << i;
  }
  EXPECT_EQ(g.lines[0].kind, LineKind::Root);
  EXPECT_EQ(g.lines[0].gloss.tags, (std::vector<std::string>{"vi", "vtr"}));
  EXPECT_EQ(g.lines[4].kind, LineKind::Ending);
  EXPECT_TRUE(g.context_free);
}

TEST(Gloss, TextFormatMatchesWorkedExample) {
  const GlossedAnalysis g = first_gloss("xekayawkelai", Orthography::Azumchefe);
  const std::string text = format_analysis(g, Format::Text, default_inventory());
  EXPECT_EQ(text.substr(0, text.find('\n')), "txeka-yaw-ke-la-i");
  EXPECT_NE(text.find("txeka(n)- : vi & vtr caminar, marchar, pasear"), std::string::npos)
      << text;
  EXPECT_NE(text.find("-yaw-     : andar"), std::string::npos) << text;
  EXPECT_NE(text.find("-i        : el / ella"), std::string::npos) << text;
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
}

TEST(Gloss, EnglishLinesOnRequest) {
  const GlossedAnalysis g = first_gloss("xekayawkelai", Orthography::Azumchefe);
  FormatOptions options;
  options.english = true;
  const std::string text = format_analysis(g, Format::Text, default_inventory(), options);
  EXPECT_NE(text.find("(to go)"), std::string::npos) << text;
  EXPECT_EQ(format_analysis(g, Format::Text, default_inventory()).find("(to go)"),
            std::string::npos);
}

TEST(Gloss, BareRootIsOneLine) {
  const GlossedAnalysis g = first_gloss("kim", Orthography::Ragileo);
  ASSERT_EQ(g.lines.size(), 1u);
  EXPECT_EQ(g.lines[0].label, "kim");
  EXPECT_EQ(g.lines[0].gloss.id, "g.kim");
}

TEST(Gloss, CompoundInUnificado) {
  const GlossedAnalysis g = first_gloss("mapuzuguyekvmejeaiñ", Orthography::Unificado);
  EXPECT_EQ(g.header(), "mapu-dungu-yekü-me-lle-a-iñ");
  const GlossedAnalysis az = first_gloss("mapuzuguyekvmejeaiñ", Orthography::Azumchefe);
  EXPECT_EQ(az.header(), "mapu-zugu-yekü-me-lle-a-iñ");
}

TEST(Gloss, CombinationRuleDifferential) {
  const GlossedAnalysis with = first_gloss("amukefun", Orthography::Ragileo);
  ASSERT_EQ(with.lines.size(), 3u);
  EXPECT_EQ(with.lines[2].kind, LineKind::Combination);
  EXPECT_EQ(with.lines[2].rule_id, "c.fu_n");
  EXPECT_EQ(with.lines[2].morph_ids, (std::vector<std::string>{"fu", "n"}));
  EXPECT_EQ(with.lines[2].label, "-fu-n");
  EXPECT_EQ(with.lines[2].piece_count, 2u);

  LexiconData data{default_lexicon().roots(), default_lexicon().suffixes(),
                   default_lexicon().glosses(), {}};
  const Lexicon without_rule(std::move(data));
  const GlossedAnalysis without = first_gloss("amukefun", Orthography::Ragileo, without_rule);
  ASSERT_EQ(without.lines.size(), 4u);
  EXPECT_EQ(without.lines[2].morph_ids, std::vector<std::string>{"fu"});
  EXPECT_EQ(without.lines[3].morph_ids, std::vector<std::string>{"n"});
  EXPECT_EQ(without.lines[3].label, "-n");
}

// Rule set where a longer rule and a shorter overlapping rule compete.
TEST(Gloss, LongestRuleWinsThenLeftmost) {
  LexiconData data{default_lexicon().roots(), default_lexicon().suffixes(),
                   default_lexicon().glosses(), {}};
  data.combos.push_back({"short", {"ke", "fu"}, "g.fu_n"});
  data.combos.push_back({"long", {"ke", "fu", "n"}, "g.fu_n"});
  const Lexicon lex(std::move(data));
  const GlossedAnalysis g = first_gloss("amukefun", Orthography::Ragileo, lex);
  ASSERT_EQ(g.lines.size(), 2u);
  EXPECT_EQ(g.lines[1].rule_id, "long");

  LexiconData data2{default_lexicon().roots(), default_lexicon().suffixes(),
                    default_lexicon().glosses(), {}};
  data2.combos.push_back({"left", {"ke", "fu"}, "g.fu_n"});
  data2.combos.push_back({"right", {"fu", "n"}, "g.fu_n"});
  const Lexicon lex2(std::move(data2));
  const GlossedAnalysis g2 = first_gloss("amukefun", Orthography::Ragileo, lex2);
  ASSERT_EQ(g2.lines.size(), 3u);
  EXPECT_EQ(g2.lines[1].rule_id, "left");
  EXPECT_EQ(g2.lines[2].morph_ids, std::vector<std::string>{"n"});
}

TEST(Gloss, UnknownMorphIsAnError) {
  Analysis a = segment(ragileo("kim"), default_lexicon());
  Segmentation s = a.segmentations[0];
  s.pieces[0].morph_id = "nope";
  EXPECT_THROW(gloss(s, default_lexicon(), default_inventory(), Orthography::Ragileo), GlossError);
}

TEST(Gloss, NoAnalysisMessage) {
  const Analysis a = segment(ragileo("xxxx"), default_lexicon());
  const std::string text = format_no_analysis("xxxx", a.failures());
  EXPECT_NE(text.find("no analysis"), std::string::npos);
  EXPECT_NE(text.find("no-match"), std::string::npos);
}

TEST(Gloss, JsonRoundTrip) {
  for (const char* w : {"xekayawkelai", "mapuzuguyekvmejeaiñ", "amukefun", "Kim", "picikalu"}) {
    for (Orthography o : kAllOrthographies) {
      const GlossedAnalysis g = first_gloss(w, o);
      const nlohmann::json j = to_json(g, default_inventory());
      EXPECT_EQ(glossed_from_json(j, default_inventory()), g) << w;
      EXPECT_EQ(nlohmann::json::parse(format_analysis(g, Format::Json, default_inventory())), j);
    }
  }
}

TEST(Gloss, MalformedJsonIsRejected) {
  EXPECT_THROW(glossed_from_json(nlohmann::json::object(), default_inventory()), GlossError);
  nlohmann::json j = to_json(first_gloss("kim", Orthography::Ragileo), default_inventory());
  j["phonemes"] = {"not-a-phoneme"};
  EXPECT_THROW(glossed_from_json(j, default_inventory()), GlossError);
}

TEST(Gloss, JsonSchemaFields) {
  const nlohmann::json j =
      to_json(first_gloss("xekayawkelai", Orthography::Azumchefe), default_inventory());
  EXPECT_EQ(j["header"], "txeka-yaw-ke-la-i");
  EXPECT_EQ(j["context_free"], true);
  ASSERT_EQ(j["pieces"].size(), 5u);
  ASSERT_EQ(j["lines"].size(), 5u);
  const auto& line = j["lines"][0];
  for (const char* key : {"surface", "label", "morph_ids", "gloss_es", "tags"}) {
    EXPECT_TRUE(line.contains(key)) << key;
  }
  EXPECT_EQ(line["surface"], "txeka");
}

// --- properties over every analysis of the shipped examples ------------------

class Properties : public ::testing::TestWithParam<const char*> {};

TEST_P(Properties, LinesPartitionPiecesAndSurfacesSpellTheWord) {
  const Analysis a = checked_segment(ragileo(GetParam()), default_lexicon());
  ASSERT_FALSE(a.segmentations.empty());
  for (const Segmentation& seg : a.segmentations) {
    for (Orthography o : kAllOrthographies) {
      const GlossedAnalysis g = gloss(seg, default_lexicon(), default_inventory(), o);
      std::size_t next = 0;
      std::string joined;
      for (const GlossLine& line : g.lines) {
        EXPECT_EQ(line.first_piece, next);
        EXPECT_GE(line.piece_count, 1u);
        if (line.kind == LineKind::Combination) {
          EXPECT_GE(line.piece_count, 2u);
        }
        EXPECT_FALSE(line.gloss.plain_es.empty());
        next += line.piece_count;
        joined += line.surface;
      }
      EXPECT_EQ(next, seg.pieces.size());
      EXPECT_EQ(tokenize(joined, o, default_inventory()), seg.word) << joined;
      EXPECT_EQ(gloss(seg, default_lexicon(), default_inventory(), o), g);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Shipped, Properties,
                         ::testing::Values("xekayawkelai", "mapuzuguyekvmejeaiñ", "pemurpayafuyu",
                                           "picikalu", "amukefun", "cijkatuwe",
                                           "cijkatuwekelan", "Kim", "iñce", "xekarukai",
                                           "xekalu"));

}  // namespace
}  // namespace kawin

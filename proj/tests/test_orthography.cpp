#include <gtest/gtest.h>

#include <random>

#include "kawin/orthography.hpp"
#include "support/fixtures.hpp"
#include "support/random_lexicon.hpp"

namespace kawin {
namespace {

using testing::default_inventory;
using O = Orthography;

std::vector<O> candidates(std::string_view text) {
  return detect(text, default_inventory()).candidates;
}

TEST(Orthography, NamesRoundTrip) {
  for (O o : kAllOrthographies) {
    EXPECT_EQ(parse_orthography(to_string(o)), o);
    EXPECT_EQ(parse_orthography(display_name(o)), o);
  }
  EXPECT_EQ(parse_orthography("Azümchefe"), O::Azumchefe);
  EXPECT_EQ(parse_orthography("UNIFICADO"), O::Unificado);
  EXPECT_FALSE(parse_orthography("latin").has_value());
  EXPECT_THROW(orthography_from_string("latin"), std::invalid_argument);
}

TEST(Convert, JampvzkenAcrossOrthographies) {
  const Inventory& inv = default_inventory();
  EXPECT_EQ(convert("Jampvzken", O::Ragileo, O::Unificado, inv).text, "Llampüdken");
  EXPECT_EQ(convert("Jampvzken", O::Ragileo, O::Azumchefe, inv).text, "Llampüzken");
  EXPECT_EQ(convert("Llampüdken", O::Unificado, O::Ragileo, inv).text, "Jampvzken");
  EXPECT_EQ(convert("Llampüzken", O::Azumchefe, O::Unificado, inv).text, "Llampüdken");
  EXPECT_FALSE(convert("Jampvzken", O::Ragileo, O::Unificado, inv).lossy());
}

TEST(Convert, InterdentalTToRagileoIsLossy) {
  const ConversionResult r = convert("t'aku", O::Azumchefe, O::Ragileo, default_inventory());
  EXPECT_EQ(r.text, "taku");
  ASSERT_EQ(r.loss_notes.size(), 1u);
  EXPECT_EQ(r.loss_notes[0].offset, 0u);
  EXPECT_EQ(default_inventory().id(r.loss_notes[0].phoneme), "t'");
}

TEST(Convert, UnificadoNgAndG) {
  const Inventory& inv = default_inventory();
  EXPECT_EQ(convert("ngen", O::Unificado, O::Ragileo, inv).text, "gen");
  EXPECT_EQ(convert("gen", O::Unificado, O::Ragileo, inv).text, "qen");
  EXPECT_EQ(convert("Ngünechen", O::Unificado, O::Azumchefe, inv).text, "Günechen");
}

// Staged replacement over plain strings: Ng is parked in a placeholder,
// every remaining g becomes q, then the placeholder comes back as g.
std::string staged_ng_g(std::string text) {
  const std::string parked = "\x01";
  auto replace_all = [&](const std::string& from, const std::string& to) {
    for (std::size_t at = text.find(from); at != std::string::npos;
         at = text.find(from, at + to.size())) {
      text.replace(at, from.size(), to);
    }
  };
  replace_all("ng", parked);
  replace_all("g", "q");
  replace_all(parked, "g");
  return text;
}

TEST(Convert, AgreesWithStagedNgGReplacement) {
  const Inventory& inv = default_inventory();
  EXPECT_EQ(staged_ng_g("ngillatun gen"), "gillatun qen");
  std::mt19937 rng(11);
  const std::string letters = "aeiounkg";
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::uniform_int_distribution<int> length(1, 20);
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    for (int n = length(rng); n > 0; --n) text += letters[pick(rng)];
    const std::string expected = staged_ng_g(text);
    EXPECT_EQ(convert(text, O::Unificado, O::Ragileo, inv).text, expected) << text;
    EXPECT_EQ(convert(text, O::Unificado, O::Azumchefe, inv).text, expected) << text;
  }
}

TEST(Convert, PropagatesTokenizeErrors) {
  EXPECT_THROW(convert("xq", O::Unificado, O::Ragileo, default_inventory()), TokenizeError);
}

TEST(Detect, JampvzkenForms) {
  EXPECT_EQ(candidates("Jampvzken"), std::vector{O::Ragileo});
  EXPECT_EQ(candidates("Llampüdken"), std::vector{O::Unificado});
  EXPECT_EQ(candidates("Llampüzken"), std::vector{O::Azumchefe});
}

TEST(Detect, SharedSpellingIsUnanimous) {
  const DetectionResult r = detect("ruka", default_inventory());
  EXPECT_EQ(r.candidates, (std::vector{O::Ragileo, O::Unificado, O::Azumchefe}));
  EXPECT_TRUE(r.unanimous);
}

TEST(Detect, MapuzuguWordIsAzumchefe) {
  EXPECT_EQ(candidates("mapuzuguyekümelleaiñ"), std::vector{O::Azumchefe});
}

TEST(Detect, BlankTextIsInvalid) {
  EXPECT_THROW(detect("   ", default_inventory()), std::invalid_argument);
  EXPECT_THROW(detect("", default_inventory()), std::invalid_argument);
}

TEST(Detect, UndetectableListsEveryRejection) {
  try {
    detect("rukaß", default_inventory());
    FAIL();
  } catch (const UndetectableError& e) {
    EXPECT_EQ(e.rejections().size(), 3u);
  }
}

TEST(Detect, CaseDoesNotMatter) {
  EXPECT_EQ(candidates("LLAMPÜDKEN"), std::vector{O::Unificado});
  EXPECT_EQ(candidates("llampüdken"), std::vector{O::Unificado});
}

TEST(Detect, InterdentalTInAzumchefeIsStillDetected) {
  const DetectionResult r = detect("t'aku", default_inventory());
  EXPECT_TRUE(r.contains(O::Azumchefe));
}

TEST(Resolve, Rules) {
  const Inventory& inv = default_inventory();
  auto resolved = [&](std::string_view w) { return resolve(detect(w, inv)); };

  auto r = resolved("Jampvzken");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->orthography, O::Ragileo);
  EXPECT_EQ(r->rule, ResolutionRule::Unique);

  r = resolved("ruka");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->rule, ResolutionRule::IdenticalReadings);
  EXPECT_EQ(r->agreeing.size(), 3u);

  const DetectionResult tx = detect("txekayawkelai", inv);
  EXPECT_EQ(tx.candidates, (std::vector{O::Ragileo, O::Azumchefe}));
  r = resolve(tx);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->orthography, O::Azumchefe);
  EXPECT_EQ(r->rule, ResolutionRule::FewestUnits);
  EXPECT_EQ(r->agreeing, std::vector{O::Azumchefe});
}

TEST(DetectDocument, IntersectsWordCandidates) {
  const DocumentDetection d = detect_document({"ruka", "Llampüdken"}, default_inventory());
  EXPECT_FALSE(d.conflict);
  EXPECT_EQ(d.overall.candidates, std::vector{O::Unificado});
  ASSERT_EQ(d.words.size(), 2u);
  EXPECT_TRUE(d.words[0].result->unanimous);
}

TEST(DetectDocument, MajorityWhenWordsDisagree) {
  const DocumentDetection d =
      detect_document({"Jampvzken", "Llampüdken", "Llampüdken"}, default_inventory());
  EXPECT_TRUE(d.conflict);
  EXPECT_EQ(d.overall.candidates, std::vector{O::Unificado});
}

TEST(DetectDocument, UndetectableWordIsReportedNotFatal) {
  const DocumentDetection d = detect_document({"ruka", "rukaß"}, default_inventory());
  ASSERT_EQ(d.words.size(), 2u);
  EXPECT_FALSE(d.words[1].result.has_value());
  EXPECT_FALSE(d.words[1].rejections.empty());
  EXPECT_THROW(detect_document({"ß"}, default_inventory()), UndetectableError);
  EXPECT_THROW(detect_document({}, default_inventory()), std::invalid_argument);
}

TEST(SplitWords, PeelsPunctuation) {
  const auto segs = split_words("Pichikalu iñche , amukefun (ruka mew).");
  std::vector<std::string> words, rest;
  for (const auto& s : segs) (s.is_word ? words : rest).push_back(s.text);
  EXPECT_EQ(words, (std::vector<std::string>{"Pichikalu", "iñche", "amukefun", "ruka", "mew"}));
  EXPECT_EQ(rest, (std::vector<std::string>{",", "(", ")."}));
}

TEST(SplitWords, KeepsApostropheAfterLetter) {
  const auto segs = split_words("t'aku kat'");
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].text, "t'aku");
  EXPECT_EQ(segs[1].text, "kat'");
}

// --- properties --------------------------------------------------------------

class RandomText : public ::testing::Test {
 protected:
  std::string text_in(O o) {
    const PhonemeString p =
        testing::random_phonemes(rng_, default_inventory().fully_represented(), 30);
    return render(p, o, default_inventory()).text;
  }
  std::mt19937 rng_{2024};
};

TEST_F(RandomText, ThereAndBackIsIdentity) {
  for (int i = 0; i < 300; ++i) {
    for (O a : kAllOrthographies) {
      const std::string src = text_in(a);
      for (O b : kAllOrthographies) {
        if (a == b) continue;
        const std::string there = convert(src, a, b, default_inventory()).text;
        EXPECT_EQ(convert(there, b, a, default_inventory()).text, src);
      }
    }
  }
}

TEST_F(RandomText, ConversionComposes) {
  const Inventory& inv = default_inventory();
  for (int i = 0; i < 200; ++i) {
    for (O a : kAllOrthographies) {
      const std::string src = text_in(a);
      for (O b : kAllOrthographies) {
        for (O c : kAllOrthographies) {
          EXPECT_EQ(convert(convert(src, a, b, inv).text, b, c, inv).text,
                    convert(src, a, c, inv).text);
        }
      }
    }
  }
}

TEST_F(RandomText, SameOrthographyConversionIsIdentity) {
  for (int i = 0; i < 200; ++i) {
    for (O a : kAllOrthographies) {
      const std::string src = text_in(a);
      EXPECT_EQ(convert(src, a, a, default_inventory()).text, src);
    }
  }
}

TEST_F(RandomText, RenderedTextDetectsItsOrthography) {
  for (int i = 0; i < 200; ++i) {
    for (O a : kAllOrthographies) {
      const std::string src = text_in(a);
      EXPECT_TRUE(detect(src, default_inventory()).contains(a)) << src;
    }
  }
}

}  // namespace
}  // namespace kawin

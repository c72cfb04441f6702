#include "kawin/orthography.hpp"

#include <algorithm>
#include <stdexcept>

#include "kawin/unicode.hpp"

namespace kawin {

namespace {

// Tokens a reading needs; literal runs count once per character so that a
// stray apostrophe weighs against a reading that absorbs it into "t'".
std::size_t units(const PhonemeString& p) {
  std::size_t n = 0;
  for (const Token& t : p.tokens) {
    n += t.is_phoneme() ? 1 : unicode::length(t.literal);
  }
  return n;
}

bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

}  // namespace

ConversionResult convert(std::string_view text, Orthography from, Orthography to,
                         const Inventory& inventory) {
  RenderResult r = render(tokenize(text, from, inventory), to, inventory);
  return ConversionResult{std::move(r.text), from, to, std::move(r.losses)};
}

bool DetectionResult::contains(Orthography o) const {
  return std::find(candidates.begin(), candidates.end(), o) != candidates.end();
}

UndetectableError::UndetectableError(std::string text, std::vector<Rejection> rejections)
    : Error([&] {
        std::string msg = "cannot detect the orthography of '" + text + "'";
        for (const Rejection& r : rejections) {
          msg += "; " + std::string(to_string(r.orthography)) + ": " + r.reason;
        }
        return msg;
      }()),
      text_(std::move(text)),
      rejections_(std::move(rejections)) {}

DetectionResult detect(std::string_view text, const Inventory& inventory) {
  const std::string trimmed = unicode::trim(text);
  if (trimmed.empty()) throw std::invalid_argument("text is empty");

  DetectionResult result;
  std::vector<Rejection> rejections;
  for (Orthography x : kAllOrthographies) {
    PhonemeString reading;
    try {
      reading = tokenize(trimmed, x, inventory);
    } catch (const TokenizeError& e) {
      rejections.push_back({x, "tokenization failed: " + std::string(e.what())});
      continue;
    }
    const std::string normalized = render(reading, x, inventory).text;
    std::optional<std::string> failure;
    for (Orthography y : kAllOrthographies) {
      if (y == x) continue;
      const RenderResult there = render(reading, y, inventory);
      // A declared gap in Y says nothing about whether X was the right guess.
      if (there.lossy()) continue;
      try {
        const std::string back = render(tokenize(there.text, y, inventory), x, inventory).text;
        if (back != normalized) {
          failure = "round trip through " + std::string(to_string(y)) + " gives '" + back +
                    "' instead of '" + normalized + "'";
          break;
        }
      } catch (const TokenizeError& e) {
        failure = "round trip through " + std::string(to_string(y)) + " failed: " + e.what();
        break;
      }
    }
    if (failure) {
      rejections.push_back({x, *failure});
      continue;
    }
    result.candidates.push_back(x);
    result.readings.emplace(x, std::move(reading));
  }
  if (result.candidates.empty()) throw UndetectableError(trimmed, std::move(rejections));
  result.unanimous = result.candidates.size() == kAllOrthographies.size();
  return result;
}

DocumentDetection detect_document(const std::vector<std::string>& words,
                                  const Inventory& inventory) {
  if (words.empty()) throw std::invalid_argument("no words to detect");

  DocumentDetection doc;
  std::map<Orthography, std::size_t> votes;
  std::vector<Orthography> intersection(kAllOrthographies.begin(), kAllOrthographies.end());
  std::size_t detected = 0;

  for (const std::string& w : words) {
    WordDetection wd;
    wd.word = w;
    try {
      wd.result = detect(w, inventory);
      ++detected;
      for (Orthography o : wd.result->candidates) ++votes[o];
      std::erase_if(intersection, [&](Orthography o) { return !wd.result->contains(o); });
    } catch (const UndetectableError& e) {
      wd.rejections = e.rejections();
      intersection.clear();
    }
    doc.words.push_back(std::move(wd));
  }
  if (detected == 0) {
    std::vector<Rejection> all;
    for (const WordDetection& wd : doc.words) {
      all.insert(all.end(), wd.rejections.begin(), wd.rejections.end());
    }
    std::string joined;
    for (const std::string& w : words) joined += (joined.empty() ? "" : " ") + w;
    throw UndetectableError(joined, std::move(all));
  }

  if (!intersection.empty()) {
    doc.overall.candidates = intersection;
  } else {
    doc.conflict = true;
    std::size_t best = 0;
    for (const auto& [o, n] : votes) best = std::max(best, n);
    for (Orthography o : kAllOrthographies) {
      if (votes[o] == best) doc.overall.candidates.push_back(o);
    }
  }
  doc.overall.unanimous = doc.overall.candidates.size() == kAllOrthographies.size();
  return doc;
}

std::string_view to_string(ResolutionRule rule) {
  switch (rule) {
    case ResolutionRule::Declared: return "declared";
    case ResolutionRule::IdenticalReadings: return "identical-readings";
    case ResolutionRule::Unique: return "unique";
    case ResolutionRule::FewestUnits: return "fewest-units";
  }
  return "unknown";
}

std::optional<Resolution> resolve(const DetectionResult& detection) {
  if (detection.candidates.empty()) return std::nullopt;

  auto agreeing_with = [&](Orthography chosen) {
    std::vector<Orthography> out;
    const PhonemeString& ref = detection.readings.at(chosen).lowercased();
    for (Orthography o : detection.candidates) {
      if (detection.readings.at(o).lowercased() == ref) out.push_back(o);
    }
    return out;
  };

  const Orthography first = detection.candidates.front();
  if (detection.candidates.size() == 1) {
    return Resolution{first, ResolutionRule::Unique, {first}};
  }
  auto agreeing = agreeing_with(first);
  if (agreeing.size() == detection.candidates.size()) {
    return Resolution{first, ResolutionRule::IdenticalReadings, std::move(agreeing)};
  }

  std::size_t fewest = SIZE_MAX;
  for (Orthography o : detection.candidates) {
    fewest = std::min(fewest, units(detection.readings.at(o)));
  }
  std::vector<Orthography> minimal;
  for (Orthography o : detection.candidates) {
    if (units(detection.readings.at(o)) == fewest) minimal.push_back(o);
  }
  agreeing = agreeing_with(minimal.front());
  for (Orthography o : minimal) {
    if (std::find(agreeing.begin(), agreeing.end(), o) == agreeing.end()) return std::nullopt;
  }
  return Resolution{minimal.front(), ResolutionRule::FewestUnits, std::move(agreeing)};
}

std::vector<TextSegment> split_words(std::string_view text) {
  const std::u32string cps = unicode::decode(unicode::nfc(text));
  std::vector<TextSegment> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (unicode::is_space(cps[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < cps.size() && !unicode::is_space(cps[end])) ++end;

    std::size_t begin = i;
    while (begin < end && !unicode::is_letter_like(cps[begin])) ++begin;
    std::size_t stop = end;
    while (stop > begin && !unicode::is_letter_like(cps[stop - 1]) &&
           !(is_apostrophe(cps[stop - 1]) && stop - 1 > begin &&
             unicode::is_letter_like(cps[stop - 2]))) {
      --stop;
    }
    const std::u32string_view view(cps);
    if (begin > i) out.push_back({unicode::encode(view.substr(i, begin - i)), false});
    if (stop > begin) out.push_back({unicode::encode(view.substr(begin, stop - begin)), true});
    if (end > stop && stop >= begin) {
      out.push_back({unicode::encode(view.substr(stop, end - stop)), false});
    }
    i = end;
  }
  return out;
}

}  // namespace kawin

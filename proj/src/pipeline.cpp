#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kawin/analyzer.hpp"
#include "kawin/glosser.hpp"
#include "kawin/orthography.hpp"
#include "kawin/service.hpp"
#include "kawin/unicode.hpp"
#include "tsv.hpp"

#ifndef KAWIN_VERSION
#define KAWIN_VERSION "0.0.0"
#endif
#ifndef KAWIN_DEFAULT_DATA_DIR
#define KAWIN_DEFAULT_DATA_DIR "data"
#endif

namespace kawin {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view version() { return KAWIN_VERSION; }

fs::path default_data_dir() {
  if (const char* env = std::getenv("KAWIN_DATA"); env && *env) return env;
  return KAWIN_DEFAULT_DATA_DIR;
}

// --- config ------------------------------------------------------------------

namespace {

template <typename T>
T config_value(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw LoadError(std::string("config: '") + key + "' has the wrong type");
  }
}

std::size_t positive(const json& j, const char* key) {
  const auto v = config_value<std::int64_t>(j, key);
  if (v <= 0) throw LoadError(std::string("config: '") + key + "' must be positive");
  return static_cast<std::size_t>(v);
}

}  // namespace

ServiceConfig ServiceConfig::from_json(const json& j, const fs::path& base) {
  if (!j.is_object()) throw LoadError("config: expected a JSON object");
  ServiceConfig c;
  auto path = [&](const char* key) {
    fs::path p = config_value<std::string>(j, key);
    return p.is_relative() && !base.empty() ? base / p : p;
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "host") {
      c.host = config_value<std::string>(j, "host");
    } else if (key == "port") {
      const auto port = config_value<std::int64_t>(j, "port");
      if (port < 0 || port > 65535) throw LoadError("config: 'port' out of range");
      c.port = static_cast<int>(port);
    } else if (key == "data_dir") {
      c.data_dir = path("data_dir");
    } else if (key == "static_dir") {
      if (!value.is_null()) c.static_dir = path("static_dir");
    } else if (key == "max_input_chars") {
      c.max_input_chars = positive(j, "max_input_chars");
    } else if (key == "max_segmentations") {
      c.max_segmentations = positive(j, "max_segmentations");
    } else if (key == "default_display") {
      if (!value.is_null()) {
        auto o = parse_orthography(config_value<std::string>(j, "default_display"));
        if (!o) throw LoadError("config: unknown orthography in 'default_display'");
        c.default_display = o;
      }
    } else if (key == "message_language") {
      c.message_language = config_value<std::string>(j, "message_language");
      if (c.message_language != "es" && c.message_language != "arn") {
        throw LoadError("config: 'message_language' must be es or arn");
      }
    } else if (key == "unificado_plain_interdentals") {
      c.unificado_plain_interdentals = config_value<bool>(j, "unificado_plain_interdentals");
    } else {
      throw LoadError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

ServiceConfig ServiceConfig::load(const fs::path& file) {
  json j;
  try {
    j = json::parse(tsv::read_file(file));
  } catch (const json::parse_error& e) {
    throw LoadError(file.string() + ": " + e.what());
  }
  return from_json(j, file.parent_path());
}

// --- messages ----------------------------------------------------------------

MessageCatalog MessageCatalog::load(const fs::path& file) {
  MessageCatalog catalog;
  json j;
  try {
    j = json::parse(tsv::read_file(file));
  } catch (const json::parse_error& e) {
    throw LoadError(file.string() + ": " + e.what());
  }
  if (!j.is_object()) throw LoadError(file.string() + ": expected an object");
  for (const auto& [language, table] : j.items()) {
    if (language.starts_with('_')) continue;
    if (!table.is_object()) throw LoadError(file.string() + ": '" + language + "' is not an object");
    auto& out = catalog.entries_[language];
    for (const auto& [code, text] : table.items()) {
      if (!text.is_string()) throw LoadError(file.string() + ": " + language + "." + code);
      out[code] = text.get<std::string>();
    }
  }
  if (!catalog.has_language("es")) throw LoadError(file.string() + ": no 'es' messages");
  return catalog;
}

bool MessageCatalog::has_language(const std::string& language) const {
  return entries_.contains(language);
}

std::string MessageCatalog::get(const std::string& code, const std::string& language) const {
  for (const std::string& lang : {language, std::string("es")}) {
    if (auto t = entries_.find(lang); t != entries_.end()) {
      if (auto m = t->second.find(code); m != t->second.end()) return m->second;
    }
  }
  return code;
}

// --- engine ------------------------------------------------------------------

Engine::Engine(ServiceConfig config, Inventory inventory, Lexicon lexicon,
               MessageCatalog messages, std::string fingerprint)
    : config_(std::move(config)),
      inventory_(std::move(inventory)),
      lexicon_(std::move(lexicon)),
      messages_(std::move(messages)),
      fingerprint_(std::move(fingerprint)) {}

std::shared_ptr<const Engine> Engine::load(const ServiceConfig& config) {
  const fs::path& dir = config.data_dir;
  if (!fs::is_directory(dir)) throw LoadError("data directory not found: " + dir.string());

  InventoryOptions options;
  options.unificado_plain_interdentals = config.unificado_plain_interdentals;
  Inventory inventory = Inventory::load(dir / "phonemes.tsv", options);
  Lexicon lexicon = load_lexicon(dir / "lexicon", inventory);
  MessageCatalog messages = MessageCatalog::load(dir / "messages.json");

  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char* name : {"phonemes.tsv", "lexicon/roots.tsv", "lexicon/suffixes.tsv",
                           "lexicon/glosses.tsv", "lexicon/combos.tsv"}) {
    const std::string bytes = std::string(name) + '\0' + tsv::read_file(dir / name);
    for (unsigned char ch : bytes) {
      hash ^= ch;
      hash *= 0x100000001b3ULL;
    }
  }
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << hash;

  return std::shared_ptr<const Engine>(new Engine(config, std::move(inventory),
                                                  std::move(lexicon), std::move(messages),
                                                  hex.str()));
}

// --- errors ------------------------------------------------------------------

ServiceError::ServiceError(std::string code, int status, std::string what, json detail)
    : Error(std::move(what)), code_(std::move(code)), status_(status), detail_(std::move(detail)) {}

json error_envelope(const ServiceError& e, const Engine* engine, const std::string& language) {
  const std::string message = engine ? engine->messages().get(e.code(), language) : e.what();
  json detail = e.detail();
  if (!detail.contains("reason")) detail["reason"] = e.what();
  return {{"error", {{"code", e.code()}, {"message", message}, {"detail", detail}}}};
}

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ServiceError("invalid_request", 400, std::string("body is not valid JSON: ") + e.what());
  }
}

// --- requests ----------------------------------------------------------------

namespace {

ServiceError bad_request(std::string code, std::string what, json detail = json::object()) {
  return ServiceError(std::move(code), 400, std::move(what), std::move(detail));
}

const json& require_object(const json& body) {
  if (!body.is_object()) throw bad_request("invalid_request", "request body must be a JSON object");
  return body;
}

std::string string_field(const json& body, const char* key, bool required) {
  if (!body.contains(key)) {
    if (required) {
      throw bad_request("invalid_request", std::string("missing field '") + key + "'",
                        {{"field", key}});
    }
    return {};
  }
  if (!body.at(key).is_string()) {
    throw bad_request("invalid_request", std::string("field '") + key + "' must be a string",
                      {{"field", key}});
  }
  return body.at(key).get<std::string>();
}

std::optional<Orthography> orthography_field(const json& body, const char* key) {
  if (!body.contains(key) || body.at(key).is_null()) return std::nullopt;
  const std::string name = string_field(body, key, false);
  auto o = parse_orthography(name);
  if (!o) {
    throw bad_request("invalid_orthography", "unknown orthography '" + name + "'",
                      {{"field", key}, {"value", name}});
  }
  return o;
}

Orthography required_orthography(const json& body, const char* key) {
  auto o = orthography_field(body, key);
  if (!o) {
    throw bad_request("invalid_request", std::string("missing field '") + key + "'",
                      {{"field", key}});
  }
  return *o;
}

// Shared text checks: valid UTF-8, nonblank, within the size cap.
std::string checked_text(const std::string& raw, const ServiceConfig& config) {
  std::string text;
  try {
    text = unicode::nfc(raw);
  } catch (const EncodingError& e) {
    throw bad_request("invalid_request", e.what(), {{"byte_offset", e.byte_offset()}});
  }
  const std::size_t chars = unicode::length(text);
  if (chars > config.max_input_chars) {
    throw ServiceError("input_too_large", 413,
                       "input has " + std::to_string(chars) + " characters; the limit is " +
                           std::to_string(config.max_input_chars),
                       {{"length", chars}, {"limit", config.max_input_chars}});
  }
  if (unicode::trim(text).empty()) throw bad_request("empty_text", "text is empty");
  return text;
}

json names(const std::vector<Orthography>& list) {
  json out = json::array();
  for (Orthography o : list) out.push_back(to_string(o));
  return out;
}

json rejections_json(const std::vector<Rejection>& rejections) {
  json out = json::array();
  for (const Rejection& r : rejections) {
    out.push_back({{"orthography", to_string(r.orthography)}, {"reason", r.reason}});
  }
  return out;
}

json tokenize_error_json(const TokenizeError& e) {
  return {{"orthography", to_string(e.orthography())},
          {"offset", e.offset()},
          {"byte_offset", e.byte_offset()},
          {"substring", e.substring()}};
}

using Clock = std::chrono::steady_clock;

double millis(Clock::duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

struct WordPlan {
  std::string surface;
  std::optional<DetectionResult> detection;
  Orthography orthography = Orthography::Ragileo;
  ResolutionRule rule = ResolutionRule::Declared;
  std::vector<Orthography> agreeing;
  PhonemeString reading;
};

// Narrows an unresolved word to the candidates the rest of the text supports.
std::optional<Resolution> resolve_in_context(const DetectionResult& word,
                                             const DetectionResult& document) {
  DetectionResult narrowed;
  for (Orthography o : word.candidates) {
    if (document.contains(o)) {
      narrowed.candidates.push_back(o);
      narrowed.readings.emplace(o, word.readings.at(o));
    }
  }
  if (narrowed.candidates.empty() || narrowed.candidates.size() == word.candidates.size()) {
    return std::nullopt;
  }
  return resolve(narrowed);
}

std::vector<WordPlan> plan_words(const std::vector<std::string>& words,
                                 const AnalyzeRequest& request, const Engine& engine) {
  const Inventory& inv = engine.inventory();
  std::vector<WordPlan> plans(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) plans[i].surface = words[i];

  if (request.input_orthography) {
    const Orthography declared = *request.input_orthography;
    for (WordPlan& p : plans) {
      try {
        p.reading = tokenize(p.surface, declared, inv);
      } catch (const TokenizeError& e) {
        json detail = tokenize_error_json(e);
        detail["word"] = p.surface;
        throw ServiceError("invalid_text", 422, e.what(), detail);
      }
      try {
        p.detection = detect(p.surface, inv);
      } catch (const UndetectableError&) {
      }
      p.orthography = declared;
      p.rule = ResolutionRule::Declared;
      p.agreeing = {declared};
    }
    return plans;
  }

  DocumentDetection document;
  try {
    document = detect_document(words, inv);
  } catch (const UndetectableError& e) {
    throw ServiceError("undetectable_orthography", 422, e.what(),
                       {{"word", e.text()}, {"rejections", rejections_json(e.rejections())}});
  }
  for (std::size_t i = 0; i < plans.size(); ++i) {
    WordPlan& p = plans[i];
    const WordDetection& wd = document.words[i];
    if (!wd.result) {
      throw ServiceError("undetectable_orthography", 422,
                         "no orthography reads '" + p.surface + "' consistently",
                         {{"word", p.surface}, {"rejections", rejections_json(wd.rejections)}});
    }
    p.detection = wd.result;
    auto resolution = resolve(*wd.result);
    if (!resolution) resolution = resolve_in_context(*wd.result, document.overall);
    if (!resolution) {
      throw ServiceError("ambiguous_orthography", 422,
                         "'" + p.surface + "' reads differently in " +
                             std::to_string(wd.result->candidates.size()) + " orthographies",
                         {{"word", p.surface}, {"candidates", names(wd.result->candidates)}});
    }
    p.orthography = resolution->orthography;
    p.rule = resolution->rule;
    p.agreeing = resolution->agreeing;
    p.reading = wd.result->readings.at(p.orthography);
  }
  return plans;
}

}  // namespace

AnalyzeRequest AnalyzeRequest::from_json(const json& body) {
  require_object(body);
  static const std::vector<std::string> known{"text", "input_orthography", "display_orthography",
                                              "max_segmentations", "strict", "language"};
  for (const auto& [key, value] : body.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw bad_request("invalid_request", "unknown field '" + key + "'", {{"field", key}});
    }
  }
  AnalyzeRequest r;
  r.text = string_field(body, "text", true);
  r.input_orthography = orthography_field(body, "input_orthography");
  r.display_orthography = orthography_field(body, "display_orthography");
  if (body.contains("max_segmentations") && !body.at("max_segmentations").is_null()) {
    const json& m = body.at("max_segmentations");
    if (!m.is_number_integer() || m.get<std::int64_t>() <= 0) {
      throw bad_request("invalid_request", "'max_segmentations' must be a positive integer",
                        {{"field", "max_segmentations"}});
    }
    r.max_segmentations = m.get<std::size_t>();
  }
  if (body.contains("strict")) {
    if (!body.at("strict").is_boolean()) {
      throw bad_request("invalid_request", "'strict' must be a boolean", {{"field", "strict"}});
    }
    r.strict = body.at("strict").get<bool>();
  }
  return r;
}

json run_pipeline(const AnalyzeRequest& request, const Engine& engine) {
  const auto started = Clock::now();
  const ServiceConfig& config = engine.config();
  const Inventory& inv = engine.inventory();

  const std::string text = checked_text(request.text, config);
  const std::size_t cap = request.max_segmentations.value_or(config.max_segmentations);
  if (cap > config.max_segmentations) {
    throw bad_request("cap_exceeded",
                      "max_segmentations " + std::to_string(cap) + " exceeds the server cap of " +
                          std::to_string(config.max_segmentations),
                      {{"limit", config.max_segmentations}});
  }

  const std::vector<TextSegment> segments = split_words(text);
  std::vector<std::string> words;
  for (const TextSegment& s : segments) {
    if (s.is_word) words.push_back(s.text);
  }
  if (words.empty()) throw bad_request("no_words", "text contains no words");

  const std::vector<WordPlan> plans = plan_words(words, request, engine);
  const auto detected = Clock::now();

  SegmentOptions options;
  options.max_segmentations = cap;
  json items = json::array();
  std::size_t next = 0;
  std::vector<std::string> unanalyzed;
  for (const TextSegment& s : segments) {
    if (!s.is_word) {
      items.push_back({{"kind", "punctuation"}, {"text", s.text}});
      continue;
    }
    const WordPlan& p = plans[next++];
    const Orthography display =
        request.display_orthography.value_or(config.default_display.value_or(p.orthography));

    json detection = {{"candidates", p.detection ? names(p.detection->candidates) : json::array()},
                      {"unanimous", p.detection && p.detection->unanimous},
                      {"resolved", to_string(p.orthography)},
                      {"resolution", to_string(p.rule)}};
    json conversions = json::object();
    for (Orthography o : kAllOrthographies) {
      const RenderResult r = render(p.reading, o, inv);
      conversions[std::string(to_string(o))] = {{"text", r.text}, {"lossy", r.lossy()}};
    }

    const Analysis analysis = segment(p.reading, engine.lexicon(), options);
    json segmentations = json::array();
    for (const Segmentation& seg : analysis.segmentations) {
      segmentations.push_back(to_json(gloss(seg, engine.lexicon(), inv, display), inv));
    }
    if (analysis.segmentations.empty()) unanalyzed.push_back(p.surface);

    items.push_back({{"kind", "word"},
                     {"word", p.surface},
                     {"detection", std::move(detection)},
                     {"detected_orthographies", names(p.agreeing)},
                     {"conversions", std::move(conversions)},
                     {"display_orthography", to_string(display)},
                     {"segmentations", std::move(segmentations)},
                     {"truncated", analysis.truncated},
                     {"failures", analysis.failures()}});
  }
  if (request.strict && !unanalyzed.empty()) {
    throw ServiceError("unanalyzable", 422,
                       std::to_string(unanalyzed.size()) + " word(s) have no analysis",
                       {{"words", unanalyzed}});
  }
  const auto finished = Clock::now();

  json out = {{"text", text},
              {"input_orthography", request.input_orthography
                                        ? json(to_string(*request.input_orthography))
                                        : json(nullptr)},
              {"display_orthography", request.display_orthography
                                          ? json(to_string(*request.display_orthography))
                                          : json(nullptr)},
              {"max_segmentations", cap},
              {"words", std::move(items)},
              {"timing",
               {{"detect_ms", millis(detected - started)},
                {"analyze_ms", millis(finished - detected)},
                {"total_ms", millis(finished - started)}}}};
  return out;
}

json analyze_json(const json& body, const Engine& engine) {
  return run_pipeline(AnalyzeRequest::from_json(body), engine);
}

json detect_json(const json& body, const Engine& engine) {
  require_object(body);
  const std::string text = checked_text(string_field(body, "text", true), engine.config());
  std::vector<std::string> words;
  for (const TextSegment& s : split_words(text)) {
    if (s.is_word) words.push_back(s.text);
  }
  if (words.empty()) throw bad_request("no_words", "text contains no words");

  DocumentDetection document;
  try {
    document = detect_document(words, engine.inventory());
  } catch (const UndetectableError& e) {
    throw ServiceError("undetectable_orthography", 422, e.what(),
                       {{"word", e.text()}, {"rejections", rejections_json(e.rejections())}});
  }
  json per_word = json::array();
  for (const WordDetection& wd : document.words) {
    json w = {{"word", wd.word}};
    if (wd.result) {
      w["candidates"] = names(wd.result->candidates);
      w["unanimous"] = wd.result->unanimous;
      if (auto r = resolve(*wd.result)) {
        w["resolved"] = to_string(r->orthography);
        w["resolution"] = to_string(r->rule);
        w["detected_orthographies"] = names(r->agreeing);
      } else {
        w["resolved"] = nullptr;
        w["resolution"] = nullptr;
        w["detected_orthographies"] = names(wd.result->candidates);
      }
    } else {
      w["candidates"] = json::array();
      w["unanimous"] = false;
      w["rejections"] = rejections_json(wd.rejections);
    }
    per_word.push_back(std::move(w));
  }
  return {{"text", text},
          {"candidates", names(document.overall.candidates)},
          {"unanimous", document.overall.unanimous},
          {"conflict", document.conflict},
          {"words", std::move(per_word)}};
}

json convert_json(const json& body, const Engine& engine) {
  require_object(body);
  const std::string text = checked_text(string_field(body, "text", true), engine.config());
  const Orthography from = required_orthography(body, "from");
  const Orthography to = required_orthography(body, "to");
  ConversionResult result;
  try {
    result = convert(text, from, to, engine.inventory());
  } catch (const TokenizeError& e) {
    throw ServiceError("invalid_text", 422, e.what(), tokenize_error_json(e));
  }
  json losses = json::array();
  for (const LossNote& n : result.loss_notes) {
    losses.push_back({{"offset", n.offset}, {"phoneme", engine.inventory().id(n.phoneme)}});
  }
  return {{"text", result.text}, {"lossy", result.lossy()}, {"losses", std::move(losses)}};
}

json health_json(const Engine& engine) {
  return {{"status", "ok"},
          {"version", version()},
          {"fingerprint", engine.fingerprint()},
          {"phonemes", engine.inventory().size()},
          {"roots", engine.lexicon().roots().size()},
          {"suffixes", engine.lexicon().suffixes().size()},
          {"max_input_chars", engine.config().max_input_chars},
          {"max_segmentations", engine.config().max_segmentations}};
}

}  // namespace kawin

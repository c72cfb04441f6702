// kawin: command-line front end for detection, conversion, analysis and the
// HTTP service.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kawin/glosser.hpp"
#include "kawin/lexicon.hpp"
#include "kawin/orthography.hpp"
#include "kawin/server.hpp"
#include "kawin/service.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kData = 2, kAnalysis = 3 };

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

struct Globals {
  std::string config_file;
  std::string data_dir;
  std::string language;
};

kawin::ServiceConfig make_config(const Globals& g) {
  kawin::ServiceConfig config =
      g.config_file.empty() ? kawin::ServiceConfig{} : kawin::ServiceConfig::load(g.config_file);
  if (!g.data_dir.empty()) config.data_dir = g.data_dir;
  if (!g.language.empty()) config.message_language = g.language;
  return config;
}

int fail(const kawin::ServiceError& e, const kawin::Engine& engine, bool as_json) {
  const json envelope = kawin::error_envelope(e, &engine, engine.config().message_language);
  if (as_json) {
    std::cout << envelope.dump(2) << '\n';
  } else {
    std::cerr << "kawin: " << envelope["error"]["message"].get<std::string>() << " ("
              << e.what() << ")\n";
  }
  return e.status() == 422 ? kAnalysis : kUsage;
}

void print_word(const json& item, const kawin::Engine& engine, bool english) {
  const kawin::Inventory& inv = engine.inventory();
  const json& det = item["detection"];
  std::cout << item["word"].get<std::string>() << "  [" << det["resolved"].get<std::string>()
            << ", " << det["resolution"].get<std::string>() << "]\n";
  for (const auto& [orth, conv] : item["conversions"].items()) {
    std::cout << "  " << orth << ": " << conv["text"].get<std::string>()
              << (conv["lossy"].get<bool>() ? " (lossy)" : "") << '\n';
  }
  const json& segs = item["segmentations"];
  if (segs.empty()) {
    std::cout << kawin::format_no_analysis(item["word"].get<std::string>(),
                                           item["failures"].get<std::vector<std::string>>());
    return;
  }
  kawin::FormatOptions options;
  options.english = english;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const kawin::GlossedAnalysis g = kawin::glossed_from_json(segs[i], inv);
    std::cout << '\n' << (i + 1) << ". "
              << kawin::format_analysis(g, kawin::Format::Text, inv, options);
  }
  if (item["truncated"].get<bool>()) std::cout << "(more analyses not shown)\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Mapuzugun orthography detection, conversion and morphological analysis"};
  app.set_version_flag("--version", std::string(kawin::version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--data", g.data_dir, "Data directory (phonemes.tsv, lexicon/, messages.json)");
  app.add_option("--lang", g.language, "Message language")->check(CLI::IsMember({"es", "arn"}));

  std::vector<std::string> words;
  std::string from, to, ortho, display;
  bool as_json = false, strict = false, english = false;
  std::size_t max_segmentations = 0;

  auto* detect = app.add_subcommand("detect", "Report the orthographies a text can be read in");
  detect->add_option("text", words, "Text")->required();

  auto* convert = app.add_subcommand("convert", "Convert text between orthographies");
  convert->add_option("--from", from, "Source orthography")->required();
  convert->add_option("--to", to, "Target orthography")->required();
  convert->add_option("text", words, "Text")->required();

  auto* analyze = app.add_subcommand("analyze", "Segment and gloss each word");
  analyze->add_option("--ortho", ortho, "Input orthography (skips detection)");
  analyze->add_option("--display", display, "Orthography for surfaces in the output");
  analyze->add_option("--max", max_segmentations, "Segmentations per word")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--json", as_json, "Print the API response");
  analyze->add_flag("--strict", strict, "Exit 3 when a word has no analysis");
  analyze->add_flag("--english", english, "Add English gloss lines");
  analyze->add_option("text", words, "Text")->required();

  auto* lexicon = app.add_subcommand("lexicon", "Lexicon maintenance");
  lexicon->require_subcommand(1);
  std::string lexicon_dir;
  auto* check = lexicon->add_subcommand("check", "Load a lexicon directory and list warnings");
  check->add_option("dir", lexicon_dir, "Directory with roots/suffixes/glosses/combos.tsv")
      ->required();

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  int port = -1;
  std::string host, static_dir;
  serve->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--static", static_dir, "Directory of UI files to serve")
      ->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::shared_ptr<const kawin::Engine> engine;
  kawin::ServiceConfig config;
  try {
    config = make_config(g);
    if (serve->parsed()) {
      if (port >= 0) config.port = port;
      if (!host.empty()) config.host = host;
      if (!static_dir.empty()) config.static_dir = static_dir;
    }
    engine = kawin::Engine::load(config);
  } catch (const kawin::Error& e) {
    std::cerr << "kawin: " << e.what() << '\n';
    return kData;
  }

  if (check->parsed()) {
    try {
      const kawin::Lexicon lex = kawin::load_lexicon(lexicon_dir, engine->inventory());
      const auto warnings = kawin::validate_lexicon(lex);
      for (const std::string& w : warnings) std::cout << "warning: " << w << '\n';
      std::cout << lex.roots().size() << " roots, " << lex.suffixes().size() << " suffixes, "
                << lex.glosses().size() << " glosses, " << lex.combos().size()
                << " combination rules; " << warnings.size() << " warning(s)\n";
      return kOk;
    } catch (const kawin::Error& e) {
      std::cerr << "kawin: " << e.what() << '\n';
      return kData;
    }
  }

  if (serve->parsed()) {
    kawin::HttpService service(engine);
    if (!service.bind(config.host, config.port)) {
      std::cerr << "kawin: cannot bind " << config.host << ':' << config.port << '\n';
      return kData;
    }
    std::cerr << "kawin " << kawin::version() << " listening on http://" << config.host << ':'
              << config.port << " (data " << engine->fingerprint() << ")\n";
    service.run();
    return kOk;
  }

  const std::string text = join(words);
  try {
    if (detect->parsed()) {
      const json out = kawin::detect_json({{"text", text}}, *engine);
      std::vector<std::string> names = out["candidates"].get<std::vector<std::string>>();
      std::cout << join(names);
      if (out["unanimous"].get<bool>()) std::cout << " (unanimous)";
      if (out["conflict"].get<bool>()) std::cout << " (words disagree)";
      std::cout << '\n';
      return kOk;
    }
    if (convert->parsed()) {
      const json out = kawin::convert_json({{"text", text}, {"from", from}, {"to", to}}, *engine);
      std::cout << out["text"].get<std::string>() << '\n';
      for (const json& loss : out["losses"]) {
        std::cerr << "kawin: lossy: phoneme '" << loss["phoneme"].get<std::string>()
                  << "' at " << loss["offset"].get<std::size_t>() << " has no grapheme in "
                  << to << '\n';
      }
      return kOk;
    }
    json body = {{"text", text}};
    if (!ortho.empty()) body["input_orthography"] = ortho;
    if (!display.empty()) body["display_orthography"] = display;
    if (max_segmentations) body["max_segmentations"] = max_segmentations;
    if (strict) body["strict"] = true;
    const json out = kawin::analyze_json(body, *engine);
    if (as_json) {
      std::cout << out.dump(2) << '\n';
      return kOk;
    }
    bool first = true;
    for (const json& item : out["words"]) {
      if (item["kind"] != "word") continue;
      if (!first) std::cout << '\n';
      first = false;
      print_word(item, *engine, english);
    }
    return kOk;
  } catch (const kawin::ServiceError& e) {
    return fail(e, *engine, as_json);
  }
}
}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "kawin: internal error: " << e.what() << '\n';
    return kData;
  }
}

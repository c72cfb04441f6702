#pragma once

// Pipeline orchestration shared by the CLI and the HTTP service:
// detect -> convert -> analyze -> gloss, with JSON in and out.

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"

#include "kawin/error.hpp"
#include "kawin/grapheme.hpp"
#include "kawin/lexicon.hpp"

namespace kawin {

std::string_view version();

/// KAWIN_DATA when set, otherwise the data directory the build was configured with.
std::filesystem::path default_data_dir();

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = default_data_dir();
  std::optional<std::filesystem::path> static_dir;
  std::size_t max_input_chars = 2000;
  std::size_t max_segmentations = 50;
  std::optional<Orthography> default_display;
  std::string message_language = "es";
  bool unificado_plain_interdentals = false;

  /// Unknown keys are rejected. Relative paths resolve against `base`.
  static ServiceConfig from_json(const nlohmann::json& j,
                                 const std::filesystem::path& base = {});
  static ServiceConfig load(const std::filesystem::path& file);
};

class MessageCatalog {
 public:
  static MessageCatalog load(const std::filesystem::path& file);

  /// Message for `code` in `language`, falling back to Spanish, then to the code.
  std::string get(const std::string& code, const std::string& language) const;
  bool has_language(const std::string& language) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> entries_;
};

/// Immutable snapshot of everything a request needs.
class Engine {
 public:
  /// Reads phonemes.tsv, lexicon/ and messages.json from config.data_dir.
  /// Throws LoadError (or TokenizeError wrapped as LoadError).
  static std::shared_ptr<const Engine> load(const ServiceConfig& config);

  const ServiceConfig& config() const { return config_; }
  const Inventory& inventory() const { return inventory_; }
  const Lexicon& lexicon() const { return lexicon_; }
  const MessageCatalog& messages() const { return messages_; }
  /// FNV-1a 64 over the data files, hex.
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  Engine(ServiceConfig config, Inventory inventory, Lexicon lexicon, MessageCatalog messages,
         std::string fingerprint);

  ServiceConfig config_;
  Inventory inventory_;
  Lexicon lexicon_;
  MessageCatalog messages_;
  std::string fingerprint_;
};

/// A request failure with its HTTP status and a machine-readable code.
class ServiceError : public Error {
 public:
  ServiceError(std::string code, int status, std::string what,
               nlohmann::json detail = nlohmann::json::object());

  const std::string& code() const noexcept { return code_; }
  int status() const noexcept { return status_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  std::string code_;
  int status_;
  nlohmann::json detail_;
};

struct AnalyzeRequest {
  std::string text;
  std::optional<Orthography> input_orthography;
  std::optional<Orthography> display_orthography;
  std::optional<std::size_t> max_segmentations;
  /// Fail with 422 when any word has no analysis.
  bool strict = false;

  /// Throws ServiceError (400) on malformed fields.
  static AnalyzeRequest from_json(const nlohmann::json& j);
};

/// Full analysis response. Throws ServiceError.
nlohmann::json run_pipeline(const AnalyzeRequest& request, const Engine& engine);

/// Handlers behind the HTTP endpoints; each takes the parsed request body.
nlohmann::json analyze_json(const nlohmann::json& body, const Engine& engine);
nlohmann::json detect_json(const nlohmann::json& body, const Engine& engine);
nlohmann::json convert_json(const nlohmann::json& body, const Engine& engine);
nlohmann::json health_json(const Engine& engine);

/// {"error": {"code", "message", "detail"}} with the message in `language`.
nlohmann::json error_envelope(const ServiceError& e, const Engine* engine,
                              const std::string& language);

/// Parses a request body; invalid JSON becomes ServiceError 400.
nlohmann::json parse_body(const std::string& body);

}  // namespace kawin

#include "kawin/server.hpp"

#include "httplib.h"

namespace kawin {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

std::string request_language(const httplib::Request& req, const Engine& engine) {
  if (req.has_param("lang")) return req.get_param_value("lang");
  return engine.config().message_language;
}

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(2), kJson);
}

template <typename Handler>
httplib::Server::Handler json_endpoint(std::shared_ptr<const Engine> engine, Handler handler) {
  return [engine, handler](const httplib::Request& req, httplib::Response& res) {
    std::string language = request_language(req, *engine);
    try {
      const json body = parse_body(req.body);
      if (!req.has_param("lang") && body.is_object() && body.contains("language") &&
          body.at("language").is_string()) {
        language = body.at("language").get<std::string>();
      }
      send(res, 200, handler(body, *engine));
    } catch (const ServiceError& e) {
      send(res, e.status(), error_envelope(e, engine.get(), language));
    } catch (const std::exception& e) {
      send(res, 500, error_envelope(ServiceError("internal", 500, e.what()), engine.get(),
                                    language));
    }
  };
}

}  // namespace

HttpService::HttpService(std::shared_ptr<const Engine> engine)
    : engine_(std::move(engine)), server_(std::make_unique<httplib::Server>()) {
  auto& svr = *server_;
  const ServiceConfig& config = engine_->config();
  // Room for the character cap at four bytes each plus JSON framing; the
  // pipeline applies the exact limit.
  svr.set_payload_max_length(config.max_input_chars * 4 + 64 * 1024);

  svr.Get("/api/health", [engine = engine_](const httplib::Request&, httplib::Response& res) {
    send(res, 200, health_json(*engine));
  });
  svr.Post("/api/detect", json_endpoint(engine_, detect_json));
  svr.Post("/api/convert", json_endpoint(engine_, convert_json));
  svr.Post("/api/analyze", json_endpoint(engine_, analyze_json));

  if (config.static_dir) svr.set_mount_point("/", config.static_dir->string());

  svr.set_error_handler([engine = engine_](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const std::string language = request_language(req, *engine);
    std::string code = "invalid_request";
    if (res.status == 404) code = "not_found";
    if (res.status == 413) code = "input_too_large";
    if (res.status >= 500) code = "internal";
    send(res, res.status,
         error_envelope(ServiceError(code, res.status, httplib::status_message(res.status)),
                        engine.get(), language));
  });
  svr.set_exception_handler([engine = engine_](const httplib::Request& req,
                                               httplib::Response& res, std::exception_ptr ep) {
    std::string what = "unknown error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    send(res, 500, error_envelope(ServiceError("internal", 500, what), engine.get(),
                                  request_language(req, *engine)));
  });
}

HttpService::~HttpService() { stop(); }

int HttpService::bind_to_any_port(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool HttpService::bind(const std::string& host, int port) {
  return server_->bind_to_port(host, port);
}

void HttpService::start() {
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void HttpService::run() { server_->listen_after_bind(); }

void HttpService::stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace kawin

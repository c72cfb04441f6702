#pragma once

// HTTP front end over the pipeline handlers.

#include <memory>
#include <string>
#include <thread>

#include "kawin/service.hpp"

namespace httplib {
class Server;
}

namespace kawin {

class HttpService {
 public:
  explicit HttpService(std::shared_ptr<const Engine> engine);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds to an ephemeral port and returns it, or -1.
  int bind_to_any_port(const std::string& host);
  /// Returns false when the address cannot be bound.
  bool bind(const std::string& host, int port);
  /// Serves on a background thread after a successful bind.
  void start();
  /// Serves on the calling thread until stop().
  void run();
  void stop();

 private:
  std::shared_ptr<const Engine> engine_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace kawin

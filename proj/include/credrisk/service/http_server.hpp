#pragma once

#include <memory>
#include <string>

#include "credrisk/service/engine.hpp"

namespace credrisk {

struct ServerOptions {
  std::string bearer_token;         // empty: no authentication
  std::string cors_origin = "*";    // empty: no CORS headers
};

// JSON API over an Engine:
//   POST /v1/transactions              score one transaction
//   POST /v1/accounts                  register an account
//   GET  /v1/accounts/{id}
//   GET  /v1/flags?status=pending      newest first; status=all for every flag
//   GET  /v1/flags/{id}
//   POST /v1/flags/{id}/resolution     {"verdict": "confirmed_bad"|"confirmed_good", "note"}
//   GET  /v1/health
//   GET  /v1/config
// Errors are application/problem+json with a machine-readable "code".
class HttpServer {
 public:
  HttpServer(Engine& engine, ServerOptions opts = {});
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Response bodies, exposed for tests and the CLI.
nlohmann::json account_view(const AccountState& a);
nlohmann::json flag_view(const FlagItem& f);
nlohmann::json assessment_view(const RiskAssessment& a);

}  // namespace credrisk

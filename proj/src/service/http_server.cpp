#include "credrisk/service/http_server.hpp"

#include <iostream>

#include <httplib.h>

#include "credrisk/error.hpp"

namespace credrisk {

using nlohmann::json;

namespace {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse:
    case ErrorCode::invalid_argument:
    case ErrorCode::schema_mismatch:
    case ErrorCode::unsupported:
      return 400;
    case ErrorCode::not_found: return 404;
    case ErrorCode::conflict: return 409;
    case ErrorCode::degenerate_class:
    case ErrorCode::config:
      return 422;
    case ErrorCode::storage: return 503;
  }
  return 500;
}

const char* reason_phrase(int status) {
  switch (status) {
    case 400: return "Bad Request";
    case 401: return "Unauthorized";
    case 404: return "Not Found";
    case 405: return "Method Not Allowed";
    case 409: return "Conflict";
    case 422: return "Unprocessable Content";
    case 503: return "Service Unavailable";
    default: return "Internal Server Error";
  }
}

void problem(httplib::Response& res, int status, std::string_view code, std::string_view detail) {
  json body = {{"type", "urn:credrisk:error:" + std::string(code)},
               {"title", reason_phrase(status)},
               {"status", status},
               {"code", code},
               {"detail", detail}};
  res.status = status;
  res.set_content(body.dump(), "application/problem+json");
}

void reply(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json parse_body(const httplib::Request& req) {
  try {
    auto body = json::parse(req.body);
    if (!body.is_object()) throw Error(ErrorCode::parse, "request body must be a JSON object");
    return body;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("request body: ") + e.what());
  }
}

std::uint64_t parse_id(const std::string& s) {
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_argument, "invalid id '" + s + "'");
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Seed for POST /v1/accounts and transaction auto-registration: either an
// explicit r_offline (and optional baseline) or a profile scored by the model.
AccountSeed seed_from_request(const Engine& engine, const std::string& account_id, const json& body) {
  CustomerContext ctx;
  if (auto it = body.find("context"); it != body.end() && !it->is_null()) {
    ctx = customer_context_from_json(*it);
  }
  if (auto it = body.find("profile"); it != body.end()) {
    return engine.seed_from_profile(account_id, *it, std::move(ctx));
  }
  json seed = body;
  seed["account"] = account_id;
  seed.erase("profile");
  return account_seed_from_json(seed);
}

}  // namespace

json account_view(const AccountState& a) {
  const auto& s = a.stats;
  auto money = [](std::optional<double> minor) {
    return minor ? json(*minor / 100.0) : json(nullptr);
  };
  return {
      {"account", a.account_id},
      {"r_offline", a.risk.r_offline},
      {"source", to_string(a.risk.source)},
      {"updated_at", a.risk.updated_at},
      {"baseline_r_offline", a.baseline_r_offline},
      {"status", to_string(a.status)},
      {"context", to_json(a.context)},
      {"stats",
       {{"n_transactions", s.n_transactions()},
        {"amount_mean", money(s.amount_mean())},
        {"amount_sigma", money(s.amount_sigma())},
        {"daily_count_mean", optional_number(s.daily_count_mean())},
        {"daily_count_sigma", optional_number(s.daily_count_sigma())},
        {"active_days", s.daily_count.count()},
        {"last_txn_date", s.last_txn_date ? json(format_date(*s.last_txn_date)) : json(nullptr)}}},
      {"last_triple", a.last_triple ? to_json(*a.last_triple) : json(nullptr)},
      {"last_assessment", a.last_assessment ? assessment_view(*a.last_assessment) : json(nullptr)},
  };
}

json flag_view(const FlagItem& f) {
  return {{"flag_id", f.flag_id},
          {"account", f.assessment.account_id()},
          {"status", to_string(f.status)},
          {"resolution_note", f.resolution_note},
          {"resolved_at", f.resolved_at.empty() ? json(nullptr) : json(f.resolved_at)},
          {"assessment", assessment_view(f.assessment)}};
}

json assessment_view(const RiskAssessment& a) {
  json j = to_json(a);
  j["persisted"] = a.persisted;
  return j;
}

struct HttpServer::Impl {
  Engine& engine;
  ServerOptions opts;
  httplib::Server server;

  Impl(Engine& e, ServerOptions o) : engine(e), opts(std::move(o)) { routes(); }

  void routes() {
    server.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      if (!opts.cors_origin.empty()) {
        res.set_header("Access-Control-Allow-Origin", opts.cors_origin);
        res.set_header("Access-Control-Allow-Headers", "Authorization, Content-Type");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      }
      if (req.method == "OPTIONS") {
        res.status = 204;
        return httplib::Server::HandlerResponse::Handled;
      }
      if (!opts.bearer_token.empty() && req.path != "/v1/health") {
        if (req.get_header_value("Authorization") != "Bearer " + opts.bearer_token) {
          res.set_header("WWW-Authenticate", "Bearer");
          problem(res, 401, "unauthorized", "missing or invalid bearer token");
          return httplib::Server::HandlerResponse::Handled;
        }
      }
      return httplib::Server::HandlerResponse::Unhandled;
    });

    server.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          try {
            std::rethrow_exception(ep);
          } catch (const Error& e) {
            problem(res, http_status(e.code()), to_string(e.code()), e.what());
          } catch (const json::exception& e) {
            problem(res, 400, "parse_error", e.what());
          } catch (const std::exception& e) {
            problem(res, 500, "internal_error", e.what());
          } catch (...) {
            problem(res, 500, "internal_error", "unknown error");
          }
        });

    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
      problem(res, res.status, res.status == 404 ? "not_found" : "http_error",
              "no route for " + req.method + " " + req.path);
      return httplib::Server::HandlerResponse::Handled;
    });

    server.Post("/v1/transactions", [this](const httplib::Request& req, httplib::Response& res) {
      json body = parse_body(req);
      auto txn = transaction_from_json(body);
      std::optional<AccountSeed> seed;
      if (body.contains("profile") || body.contains("r_offline")) {
        json seed_body = body.contains("profile")
                             ? json{{"profile", body["profile"]}}
                             : json{{"r_offline", body["r_offline"]}};
        if (body.contains("baseline")) seed_body["baseline"] = body["baseline"];
        if (body.contains("customer")) seed_body["context"] = body["customer"];
        seed = seed_from_request(engine, txn.account_id, seed_body);
      }
      auto a = engine.score(txn, seed);
      reply(res, assessment_view(a), a.persisted ? 200 : 503);
    });

    server.Post("/v1/accounts", [this](const httplib::Request& req, httplib::Response& res) {
      json body = parse_body(req);
      if (!body.contains("account") || !body["account"].is_string()) {
        throw Error(ErrorCode::invalid_argument, "field 'account': missing required field");
      }
      auto seed = seed_from_request(engine, body["account"].get<std::string>(), body);
      reply(res, account_view(engine.register_account(seed)), 201);
    });

    server.Get(R"(/v1/accounts/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::string id = req.matches[1];
      auto acc = engine.store().account(id);
      if (!acc) throw Error(ErrorCode::not_found, "unknown account " + id);
      reply(res, account_view(*acc));
    });

    server.Get("/v1/flags", [this](const httplib::Request& req, httplib::Response& res) {
      std::optional<FlagStatus> filter = FlagStatus::pending;
      if (req.has_param("status")) {
        auto s = req.get_param_value("status");
        filter = s == "all" ? std::nullopt : std::optional(parse_flag_status(s));
      }
      json items = json::array();
      for (const auto& f : engine.store().list_flags(filter)) items.push_back(flag_view(f));
      reply(res, {{"items", std::move(items)}});
    });

    server.Get(R"(/v1/flags/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto id = parse_id(req.matches[1]);
      for (const auto& f : engine.store().list_flags()) {
        if (f.flag_id == id) return reply(res, flag_view(f));
      }
      throw Error(ErrorCode::not_found, "unknown flag " + std::to_string(id));
    });

    server.Post(R"(/v1/flags/(\d+)/resolution)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  auto id = parse_id(req.matches[1]);
                  json body = parse_body(req);
                  if (!body.contains("verdict") || !body["verdict"].is_string()) {
                    throw Error(ErrorCode::invalid_argument, "field 'verdict': missing required field");
                  }
                  auto verdict = parse_verdict(body["verdict"].get<std::string>());
                  auto note = body.value("note", std::string{});
                  reply(res, flag_view(engine.resolve_flag(id, verdict, note)));
                });

    server.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
      const auto& model = engine.model();
      reply(res, {{"status", "ok"},
                  {"accounts", engine.store().account_ids().size()},
                  {"pending_flags", engine.store().list_flags(FlagStatus::pending).size()},
                  {"model", model ? json(ml::kind_name(*model)) : json(nullptr)},
                  {"persistent", engine.store().persistent()}});
    });

    server.Get("/v1/config", [this](const httplib::Request&, httplib::Response& res) {
      const auto& model = engine.model();
      reply(res, {{"rules", to_json(engine.config())},
                  {"model", model ? json(ml::kind_name(*model)) : json(nullptr)},
                  {"store", {{"persistent", engine.store().persistent()},
                             {"median_window", engine.store().median_window()}}},
                  {"auth", opts.bearer_token.empty() ? "none" : "bearer"}});
    });
  }
};

HttpServer::HttpServer(Engine& engine, ServerOptions opts)
    : impl_(std::make_unique<Impl>(engine, std::move(opts))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace credrisk

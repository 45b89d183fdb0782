// credrisk: training, ranking, offline risk tables, stream replay and the
// HTTP service.

#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "credrisk/error.hpp"
#include "credrisk/ingest/arff.hpp"
#include "credrisk/ingest/german_credit.hpp"
#include "credrisk/ml/evaluate.hpp"
#include "credrisk/ml/info_gain.hpp"
#include "credrisk/ml/model_io.hpp"
#include "credrisk/ml/naive_bayes.hpp"
#include "credrisk/ml/offline_risk.hpp"
#include "credrisk/ml/pruned_tree.hpp"
#include "credrisk/ml/random_forest.hpp"
#include "credrisk/ml/split.hpp"
#include "credrisk/service/http_server.hpp"
#include "credrisk/service/replay.hpp"

namespace fs = std::filesystem;
using namespace credrisk;
using nlohmann::json;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::not_found, "cannot open " + path);
  return in;
}

// .arff files go through the ARFF reader, anything else is the
// whitespace-separated German credit layout.
Dataset load_dataset(const std::string& path) {
  auto in = open_in(path);
  if (fs::path(path).extension() == ".arff") return parse_arff(in);
  auto ds = parse_german_credit(in);
  ds.name = fs::path(path).stem().string();
  return ds;
}

ml::AnyModel load_model_file(const std::string& path) {
  auto in = open_in(path);
  return ml::load_model(in);
}

RuleConfig load_config(const std::string& path) {
  if (path.empty()) return RuleConfig::defaults();
  auto in = open_in(path);
  return load_rule_config(in);
}

ml::AnyModel train(const std::string& algo, const Dataset& ds, std::uint64_t seed,
                   std::size_t trees, std::size_t workers) {
  if (algo == "random_forest" || algo == "rf") {
    ml::ForestParams p;
    p.n_trees = trees;
    p.seed = seed;
    p.workers = workers;
    return ml::train_random_forest(ds, p);
  }
  if (algo == "naive_bayes" || algo == "nb") return ml::train_naive_bayes(ds);
  if (algo == "pruned_tree" || algo == "tree") {
    ml::TreeParams p;
    p.seed = seed;
    return ml::train_pruned_tree(ds, p);
  }
  throw Error(ErrorCode::invalid_argument, "unknown algorithm '" + algo + "'");
}

void print_metrics(const std::string& format, std::string_view algo, const ml::Metrics& m) {
  if (format == "jsonl") {
    json j = {{"algorithm", algo},     {"instances", m.instances},
              {"cci_pct", m.cci_pct},   {"ici_pct", m.ici_pct},
              {"tp_rate", m.avg_tp_rate}, {"fp_rate", m.avg_fp_rate},
              {"precision", m.precision}, {"recall", m.recall},
              {"train_time_s", m.train_time_s}, {"test_time_s", m.test_time_s}};
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << "algorithm,instances,cci_pct,ici_pct,tp_rate,fp_rate,precision,recall,"
               "train_time_s,test_time_s\n";
  std::printf("%.*s,%zu,%.2f,%.2f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f\n", static_cast<int>(algo.size()),
              algo.data(), m.instances, m.cci_pct, m.ici_pct, m.avg_tp_rate, m.avg_fp_rate,
              m.precision, m.recall, m.train_time_s, m.test_time_s);
}

// Registers every seed whose account is not in the store yet.
std::size_t seed_accounts(Engine& engine, const std::string& path) {
  if (path.empty()) return 0;
  auto in = open_in(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, path + ": " + e.what());
  }
  const json& list = doc.is_object() ? doc.at("accounts") : doc;
  std::size_t added = 0;
  for (const auto& entry : list) {
    auto seed = account_seed_from_json(entry);
    if (engine.store().account(seed.account_id)) continue;
    engine.register_account(seed);
    ++added;
  }
  return added;
}

Clock make_clock(const std::string& name) {
  if (name == "wall") return wall_clock();
  if (name == "logical") return logical_clock();
  throw Error(ErrorCode::invalid_argument, "unknown clock '" + name + "'");
}

void require_format(const std::string& format) {
  if (format != "csv" && format != "jsonl") {
    throw Error(ErrorCode::invalid_argument, "unknown format '" + format + "'");
  }
}

HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Credit-account risk engine"};
  app.require_subcommand(1);

  std::string data_path, model_path, out_path, config_path, state_dir, input_path, accounts_path;
  std::string algo = "random_forest", format = "csv", clock_name = "logical";
  std::string serve_clock = "wall";
  std::string host = "127.0.0.1", token;
  std::uint64_t seed = 1;
  std::size_t trees = 100, workers = 1, window = 0;
  double split = 0.66;
  bool strict = false, fsync = false;
  int port = 8080;

  auto* train_cmd = app.add_subcommand("train", "Train a classifier and report held-out metrics");
  train_cmd->add_option("--data", data_path, "Dataset (.arff or german.data layout)")->required();
  train_cmd->add_option("--algo", algo, "random_forest | naive_bayes | pruned_tree");
  train_cmd->add_option("--out", out_path, "Model file to write");
  train_cmd->add_option("--seed", seed, "Split and training seed");
  train_cmd->add_option("--trees", trees, "Forest size");
  train_cmd->add_option("--workers", workers, "Training threads");
  train_cmd->add_option("--split", split, "Training fraction");
  train_cmd->add_option("--format", format, "csv | jsonl");

  auto* rank_cmd = app.add_subcommand("rank", "Rank attributes by information gain");
  rank_cmd->add_option("--data", data_path, "Dataset")->required();
  rank_cmd->add_option("--format", format, "csv | jsonl");

  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a saved model");
  eval_cmd->add_option("--model", model_path, "Model file")->required();
  eval_cmd->add_option("--data", data_path, "Dataset")->required();
  eval_cmd->add_option("--split", split, "Evaluate on the held-out part of this split; 0 uses every row");
  eval_cmd->add_option("--seed", seed, "Split seed");
  eval_cmd->add_option("--format", format, "csv | jsonl");

  auto* risk_cmd = app.add_subcommand("offline-risk", "Per-account offline risk table");
  risk_cmd->add_option("--model", model_path, "Model file")->required();
  risk_cmd->add_option("--data", data_path, "Account profiles")->required();
  risk_cmd->add_option("--format", format, "csv | jsonl");

  auto* report_cmd = app.add_subcommand("report", "Per-row class probability CSV");
  report_cmd->add_option("--model", model_path, "Model file")->required();
  report_cmd->add_option("--data", data_path, "Dataset")->required();

  auto* replay_cmd = app.add_subcommand("replay", "Score a transaction file against a state directory");
  replay_cmd->add_option("--input", input_path, "Transactions, one JSON object per line")->required();
  replay_cmd->add_option("--state", state_dir, "State directory")->required();
  replay_cmd->add_option("--config", config_path, "Rule config JSON");
  replay_cmd->add_option("--accounts", accounts_path, "Account seeds registered before replay");
  replay_cmd->add_option("--model", model_path, "Model file");
  replay_cmd->add_option("--clock", clock_name, "logical | wall");
  replay_cmd->add_option("--median-window", window, "Category median window (default from config)");
  replay_cmd->add_flag("--strict", strict, "Abort on the first malformed line");
  replay_cmd->add_flag("--fsync", fsync, "fsync every record");
  replay_cmd->add_option("--format", format, "csv | jsonl");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--state", state_dir, "State directory")->required();
  serve_cmd->add_option("--config", config_path, "Rule config JSON");
  serve_cmd->add_option("--accounts", accounts_path, "Account seeds registered at startup");
  serve_cmd->add_option("--model", model_path, "Model used for profile registration");
  serve_cmd->add_option("--host", host, "Listen address");
  serve_cmd->add_option("--port", port, "Listen port");
  serve_cmd->add_option("--token", token, "Static bearer token");
  serve_cmd->add_option("--clock", serve_clock, "logical | wall");
  serve_cmd->add_flag("--fsync", fsync, "fsync every record");

  auto* compact_cmd = app.add_subcommand("compact", "Snapshot the state and truncate the event log");
  compact_cmd->add_option("--state", state_dir, "State directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    require_format(format);

    if (*train_cmd) {
      auto ds = load_dataset(data_path);
      auto parts = ml::split_dataset(ds, split, seed);
      auto t0 = std::chrono::steady_clock::now();
      auto model = train(algo, parts.train, seed, trees, workers);
      double train_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      auto m = ml::evaluate(model, parts.test);
      m.train_time_s = train_s;
      print_metrics(format, ml::kind_name(model), m);
      if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error(ErrorCode::storage, "cannot write " + out_path);
        ml::save_model(out, model);
      }
    } else if (*rank_cmd) {
      auto ranking = ml::info_gain_rank(load_dataset(data_path));
      if (format == "csv") std::cout << "rank,attribute,info_gain\n";
      std::size_t rank = 0;
      for (const auto& e : ranking.entries) {
        ++rank;
        if (format == "csv") {
          std::printf("%zu,%s,%.6f\n", rank, e.name.c_str(), e.info_gain);
        } else {
          std::cout << json{{"rank", rank}, {"attribute", e.name}, {"info_gain", e.info_gain}}.dump()
                    << "\n";
        }
      }
    } else if (*eval_cmd) {
      auto model = load_model_file(model_path);
      auto ds = load_dataset(data_path);
      auto m = split > 0 && split < 1 ? ml::evaluate(model, ml::split_dataset(ds, split, seed).test)
                                      : ml::evaluate(model, ds);
      print_metrics(format, ml::kind_name(model), m);
    } else if (*risk_cmd) {
      auto model = load_model_file(model_path);
      auto table = ml::offline_risk_table(model, load_dataset(data_path));
      if (format == "csv") std::cout << "account_id,r_offline,r_offline_pct,source\n";
      for (const auto& r : table) {
        if (format == "csv") {
          std::printf("%s,%.3f,%.0f,%s\n", r.account_id.c_str(), r.r_offline, r.r_offline,
                      std::string(to_string(r.source)).c_str());
        } else {
          std::cout << json{{"account", r.account_id}, {"r_offline", r.r_offline},
                            {"source", to_string(r.source)}}.dump()
                    << "\n";
        }
      }
    } else if (*report_cmd) {
      auto model = load_model_file(model_path);
      ml::write_probability_report(std::cout, model, load_dataset(data_path));
    } else if (*replay_cmd) {
      auto cfg = load_config(config_path);
      Store::Options so{window ? window : cfg.median_window, fsync};
      auto store = Store::open(state_dir, so);
      std::optional<ml::AnyModel> model;
      if (!model_path.empty()) model = load_model_file(model_path);
      Engine engine(cfg, *store, std::move(model), make_clock(clock_name));
      seed_accounts(engine, accounts_path);
      auto in = open_in(input_path);
      auto report = run_replay(engine, in, {strict});
      if (format == "jsonl") {
        std::cout << to_json(report, true).dump() << "\n";
      } else {
        std::cout << "processed,passed_screen,scored,flagged,rejected,unpersisted,"
                     "threshold_exceeded,gap_positive,spike_positive,wall_time_s\n";
        auto reason = [&](const char* k) {
          auto it = report.reasons.find(k);
          return it == report.reasons.end() ? std::size_t{0} : it->second;
        };
        std::printf("%zu,%zu,%zu,%zu,%zu,%zu,%zu,%zu,%zu,%.3f\n", report.processed,
                    report.passed_screen, report.scored, report.flagged, report.rejected,
                    report.unpersisted, reason("threshold_exceeded"), reason("gap_positive"),
                    reason("spike_positive"), report.wall_time_s);
      }
      for (const auto& e : report.errors) std::cerr << "rejected: " << e << "\n";
    } else if (*serve_cmd) {
      auto cfg = load_config(config_path);
      auto store = Store::open(state_dir, {cfg.median_window, fsync});
      std::optional<ml::AnyModel> model;
      if (!model_path.empty()) model = load_model_file(model_path);
      Engine engine(cfg, *store, std::move(model), make_clock(serve_clock));
      seed_accounts(engine, accounts_path);
      HttpServer server(engine, {token, "*"});
      int bound = server.bind(host, port);
      if (bound < 0) {
        throw Error(ErrorCode::storage, "cannot bind " + host + ":" + std::to_string(port));
      }
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on http://" << host << ":" << bound << "\n";
      server.listen();
      g_server = nullptr;
    } else if (*compact_cmd) {
      auto store = Store::open(state_dir);
      store->compact();
      std::cout << json{{"compacted", true}, {"seq", store->snapshot_state().seq}}.dump() << "\n";
    }
  } catch (const Error& e) {
    std::cerr << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal_error"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}

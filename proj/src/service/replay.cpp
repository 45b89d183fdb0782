#include "credrisk/service/replay.hpp"

#include <chrono>

#include "credrisk/error.hpp"

namespace credrisk {

ReplayReport run_replay(Engine& engine, std::istream& lines, const ReplayOptions& opts,
                        const std::function<void(const RiskAssessment&)>& sink) {
  ReplayReport report;
  auto t0 = std::chrono::steady_clock::now();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      auto a = engine.score(parse_transaction_line(line));
      ++report.processed;
      if (a.outcome == Outcome::scored) {
        ++report.scored;
      } else {
        ++report.passed_screen;
      }
      if (a.flagged) ++report.flagged;
      if (!a.persisted) ++report.unpersisted;
      for (const auto& r : a.reasons) ++report.reasons[std::string(to_string(r.kind))];
      if (sink) sink(a);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::storage) throw;
      std::string msg = "line " + std::to_string(line_no) + ": " + e.what();
      if (opts.strict) throw Error(e.code(), msg);
      ++report.rejected;
      report.errors.push_back(std::move(msg));
    }
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

nlohmann::json to_json(const ReplayReport& r, bool include_timing) {
  nlohmann::json j = {{"processed", r.processed},
                      {"passed_screen", r.passed_screen},
                      {"scored", r.scored},
                      {"flagged", r.flagged},
                      {"rejected", r.rejected},
                      {"unpersisted", r.unpersisted},
                      {"reasons", r.reasons},
                      {"errors", r.errors}};
  if (include_timing) j["wall_time_s"] = r.wall_time_s;
  return j;
}

}  // namespace credrisk

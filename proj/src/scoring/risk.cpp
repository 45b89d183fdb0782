#include "credrisk/scoring/risk.hpp"

#include <algorithm>
#include <cstdio>

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

}  // namespace

bool signals(const Deviation& d) { return d.x > 0 || d.y > 0 || d.z > 0; }

double combine_risk(double r_online, double r_offline, double lambda) {
  return lambda * r_online + (1.0 - lambda) * r_offline;
}

std::optional<Deviation> compute_gap(const RiskTriple& current,
                                     const std::optional<RiskTriple>& medians) {
  if (!medians) return std::nullopt;
  return Deviation{current.online - medians->online, current.offline - medians->offline,
                   current.overall - medians->overall};
}

std::optional<Deviation> compute_spike(const RiskTriple& current,
                                       const std::optional<RiskTriple>& previous) {
  if (!previous) return std::nullopt;
  return Deviation{current.online - previous->online, current.offline - previous->offline,
                   current.overall - previous->overall};
}

std::string_view to_string(ReasonKind k) {
  switch (k) {
    case ReasonKind::threshold_exceeded: return "threshold_exceeded";
    case ReasonKind::gap_positive: return "gap_positive";
    case ReasonKind::spike_positive: return "spike_positive";
  }
  return "unknown";
}

ReasonKind parse_reason_kind(std::string_view s) {
  if (s == "threshold_exceeded") return ReasonKind::threshold_exceeded;
  if (s == "gap_positive") return ReasonKind::gap_positive;
  if (s == "spike_positive") return ReasonKind::spike_positive;
  throw Error(ErrorCode::parse, "unknown reason '" + std::string(s) + "'");
}

Decision decide(const RiskTriple& triple, const std::optional<Deviation>& gap,
                const std::optional<Deviation>& spike, double threshold_pct) {
  Decision d;
  if (triple.overall > threshold_pct) {
    d.reasons.push_back({ReasonKind::threshold_exceeded,
                         fmt("overall %.3f > threshold %.3f", triple.overall, threshold_pct)});
  }
  if (gap && signals(*gap)) {
    d.reasons.push_back({ReasonKind::gap_positive,
                         fmt("gap (%.3f, %.3f, %.3f)", gap->x, gap->y, gap->z)});
  }
  if (spike && signals(*spike)) {
    d.reasons.push_back({ReasonKind::spike_positive,
                         fmt("spike (%.3f, %.3f, %.3f)", spike->x, spike->y, spike->z)});
  }
  d.flagged = !d.reasons.empty();
  return d;
}

double feedback_offline(double r_offline, double r_total, double alpha) {
  return std::clamp((1.0 - alpha) * r_offline + alpha * r_total, 0.0, 100.0);
}

}  // namespace credrisk

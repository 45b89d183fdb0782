#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace credrisk {

// Online / offline / overall risk, each a percentage.
struct RiskTriple {
  double online = 0;
  double offline = 0;
  double overall = 0;
  bool operator==(const RiskTriple&) const = default;
};

// Signed componentwise difference of two triples (gap or spike).
struct Deviation {
  double x = 0;  // online
  double y = 0;  // offline
  double z = 0;  // overall
  bool operator==(const Deviation&) const = default;
};

// Any component strictly positive.
bool signals(const Deviation& d);

// lambda * online + (1 - lambda) * offline. Range checks on lambda happen
// when the rule config is loaded.
double combine_risk(double r_online, double r_offline, double lambda);

// current - medians; nullopt (no signal) when the category has no history.
std::optional<Deviation> compute_gap(const RiskTriple& current,
                                     const std::optional<RiskTriple>& medians);

// current - previous; nullopt for the account's first scored transaction.
std::optional<Deviation> compute_spike(const RiskTriple& current,
                                       const std::optional<RiskTriple>& previous);

enum class ReasonKind { threshold_exceeded, gap_positive, spike_positive };
std::string_view to_string(ReasonKind k);
ReasonKind parse_reason_kind(std::string_view s);

struct Reason {
  ReasonKind kind = ReasonKind::threshold_exceeded;
  std::string detail;
  bool operator==(const Reason&) const = default;
};

struct Decision {
  bool flagged = false;
  std::vector<Reason> reasons;
};

// Flag when overall > threshold (strict), or the gap or spike signals.
Decision decide(const RiskTriple& triple, const std::optional<Deviation>& gap,
                const std::optional<Deviation>& spike, double threshold_pct);

// (1 - alpha) * r_offline + alpha * r_total, clamped to [0, 100].
double feedback_offline(double r_offline, double r_total, double alpha);

}  // namespace credrisk

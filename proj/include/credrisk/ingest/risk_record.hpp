#pragma once

#include <string>
#include <string_view>

namespace credrisk {

enum class RiskSource { model, feedback, manual };

std::string_view to_string(RiskSource s);
RiskSource parse_risk_source(std::string_view s);

struct OfflineRiskRecord {
  std::string account_id;
  double r_offline = 0;  // percent in [0, 100]
  RiskSource source = RiskSource::model;
  std::string updated_at;

  bool operator==(const OfflineRiskRecord&) const = default;
};

}  // namespace credrisk

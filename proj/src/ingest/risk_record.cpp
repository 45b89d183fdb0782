#include "credrisk/ingest/risk_record.hpp"

#include "credrisk/error.hpp"

namespace credrisk {

std::string_view to_string(RiskSource s) {
  switch (s) {
    case RiskSource::model: return "model";
    case RiskSource::feedback: return "feedback";
    case RiskSource::manual: return "manual";
  }
  return "model";
}

RiskSource parse_risk_source(std::string_view s) {
  if (s == "model") return RiskSource::model;
  if (s == "feedback") return RiskSource::feedback;
  if (s == "manual") return RiskSource::manual;
  throw Error(ErrorCode::parse, "unknown risk source '" + std::string(s) + "'");
}

}  // namespace credrisk

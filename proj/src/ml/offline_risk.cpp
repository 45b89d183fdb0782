#include "credrisk/ml/offline_risk.hpp"

#include <cstdio>

#include "credrisk/error.hpp"

namespace credrisk::ml {

double risk_percent(const ClassDistribution& dist, std::string_view positive_label) {
  return dist.probability_of(positive_label) * 100.0;
}

std::vector<OfflineRiskRecord> offline_risk_table(const AnyModel& model, const Dataset& accounts,
                                                  std::string_view updated_at,
                                                  std::size_t first_id,
                                                  std::string_view positive_label) {
  std::vector<OfflineRiskRecord> out;
  out.reserve(accounts.size());
  for (std::size_t i = 0; i < accounts.size(); ++i) {
    auto dist = predict_proba(model, accounts.rows[i]);
    out.push_back({std::to_string(first_id + i), risk_percent(dist, positive_label),
                   RiskSource::model, std::string(updated_at)});
  }
  return out;
}

void write_probability_report(std::ostream& out, const AnyModel& model, const Dataset& rows,
                              std::size_t first_id) {
  const auto& labels = schema_of(model).class_labels();
  out << "account_id";
  for (const auto& l : labels) out << ",p_" << l;
  out << ",predicted,actual\n";
  char buf[32];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto dist = predict_proba(model, rows.rows[i]);
    out << first_id + i;
    for (double p : dist.probabilities) {
      std::snprintf(buf, sizeof buf, "%.3f", p);
      out << ',' << buf;
    }
    out << ',' << labels[dist.argmax()] << ',' << labels[rows.class_of(rows.rows[i])] << '\n';
  }
}

}  // namespace credrisk::ml

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "credrisk/ingest/dataset.hpp"
#include "credrisk/ingest/risk_record.hpp"
#include "credrisk/ml/model.hpp"

namespace credrisk::ml {

inline constexpr std::string_view kBadLabel = "bad";

// P(positive_label) * 100, unrounded.
double risk_percent(const ClassDistribution& dist, std::string_view positive_label = kBadLabel);

// Account ids are the 1-based row numbers offset by `first_id - 1`.
std::vector<OfflineRiskRecord> offline_risk_table(const AnyModel& model, const Dataset& accounts,
                                                  std::string_view updated_at = "",
                                                  std::size_t first_id = 1,
                                                  std::string_view positive_label = kBadLabel);

// CSV `account_id,p_<label>...,predicted,actual`; for {good, bad} this is
// `account_id,p_good,p_bad,predicted,actual`. Probabilities at 3 decimals.
void write_probability_report(std::ostream& out, const AnyModel& model, const Dataset& rows,
                              std::size_t first_id = 1);

}  // namespace credrisk::ml

#pragma once

#include <span>
#include <vector>

#include "credrisk/ingest/dataset.hpp"
#include "credrisk/ml/model.hpp"

namespace credrisk::ml {

// Per-class rates are averaged with class-support weights.
struct Metrics {
  std::size_t instances = 0;
  double cci_pct = 0;
  double ici_pct = 0;
  double avg_tp_rate = 0;
  double avg_fp_rate = 0;
  double precision = 0;
  double recall = 0;
  double train_time_s = 0;
  double test_time_s = 0;

  std::vector<double> class_tp_rate;
  std::vector<double> class_fp_rate;
  std::vector<double> class_precision;
};

Metrics metrics_from_predictions(std::span<const std::size_t> actual,
                                 std::span<const std::size_t> predicted,
                                 std::size_t num_classes);

// Classifies every test row; fills test_time_s. Throws Error(invalid_argument)
// on an empty test set and Error(schema_mismatch) when schemas differ.
Metrics evaluate(const AnyModel& model, const Dataset& test);

}  // namespace credrisk::ml

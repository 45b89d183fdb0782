#include "credrisk/ml/evaluate.hpp"

#include <chrono>

#include "credrisk/error.hpp"

namespace credrisk::ml {

Metrics metrics_from_predictions(std::span<const std::size_t> actual,
                                 std::span<const std::size_t> predicted,
                                 std::size_t num_classes) {
  if (actual.size() != predicted.size()) {
    throw Error(ErrorCode::invalid_argument, "actual/predicted length mismatch");
  }
  if (actual.empty()) throw Error(ErrorCode::invalid_argument, "no predictions to score");

  const double n = static_cast<double>(actual.size());
  std::vector<double> tp(num_classes, 0), fp(num_classes, 0), support(num_classes, 0),
      pred(num_classes, 0);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    support[actual[i]] += 1;
    pred[predicted[i]] += 1;
    if (actual[i] == predicted[i]) {
      tp[actual[i]] += 1;
      ++correct;
    } else {
      fp[predicted[i]] += 1;
    }
  }

  Metrics m;
  m.instances = actual.size();
  m.cci_pct = static_cast<double>(correct) / n * 100.0;
  m.ici_pct = 100.0 - m.cci_pct;
  for (std::size_t c = 0; c < num_classes; ++c) {
    double tpr = support[c] > 0 ? tp[c] / support[c] : 0.0;
    double negatives = n - support[c];
    double fpr = negatives > 0 ? fp[c] / negatives : 0.0;
    double prec = pred[c] > 0 ? tp[c] / pred[c] : 0.0;
    m.class_tp_rate.push_back(tpr);
    m.class_fp_rate.push_back(fpr);
    m.class_precision.push_back(prec);
    double w = support[c] / n;
    m.avg_tp_rate += w * tpr;
    m.avg_fp_rate += w * fpr;
    m.precision += w * prec;
  }
  m.recall = m.avg_tp_rate;
  return m;
}

Metrics evaluate(const AnyModel& model, const Dataset& test) {
  if (test.empty()) throw Error(ErrorCode::invalid_argument, "empty test set");
  if (!(schema_of(model) == test.schema)) {
    throw Error(ErrorCode::schema_mismatch, "test set schema differs from model schema");
  }
  auto start = std::chrono::steady_clock::now();
  std::vector<std::size_t> actual, predicted;
  actual.reserve(test.size());
  predicted.reserve(test.size());
  for (const auto& row : test.rows) {
    actual.push_back(test.class_of(row));
    predicted.push_back(predict(model, row));
  }
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  auto m = metrics_from_predictions(actual, predicted, test.schema.num_classes());
  m.test_time_s = elapsed.count();
  return m;
}

}  // namespace credrisk::ml

#include "credrisk/ml/naive_bayes.hpp"

#include <algorithm>

#include "credrisk/error.hpp"

namespace credrisk::ml {

NaiveBayesModel train_naive_bayes(const Dataset& train) {
  if (train.empty()) throw Error(ErrorCode::invalid_argument, "empty training set");
  const std::size_t k = train.schema.num_classes();

  NaiveBayesModel m;
  m.schema = train.schema;
  m.class_counts.assign(k, 0.0);
  for (const auto& row : train.rows) m.class_counts[train.class_of(row)] += 1;

  m.attributes.resize(train.attributes().size());
  for (std::size_t a = 0; a < train.attributes().size(); ++a) {
    if (a == train.class_index()) continue;
    const auto& spec = train.attributes()[a];
    auto& am = m.attributes[a];
    if (spec.is_nominal()) {
      am.counts.assign(k, std::vector<double>(spec.domain.size(), 0.0));
      for (const auto& row : train.rows) {
        am.counts[train.class_of(row)][static_cast<std::size_t>(row[a])] += 1;
      }
      continue;
    }
    // Welford per class
    am.mean.assign(k, 0.0);
    am.variance.assign(k, 0.0);
    std::vector<double> n(k, 0.0), m2(k, 0.0);
    for (const auto& row : train.rows) {
      auto c = train.class_of(row);
      n[c] += 1;
      double d = row[a] - am.mean[c];
      am.mean[c] += d / n[c];
      m2[c] += d * (row[a] - am.mean[c]);
    }
    for (std::size_t c = 0; c < k; ++c) {
      double var = n[c] > 1 ? m2[c] / (n[c] - 1) : 0.0;
      am.variance[c] = std::max(var, kVarianceFloor);
    }
  }
  return m;
}

}  // namespace credrisk::ml

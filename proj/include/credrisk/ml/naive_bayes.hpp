#pragma once

#include <vector>

#include "credrisk/ingest/dataset.hpp"

namespace credrisk::ml {

inline constexpr double kVarianceFloor = 1e-9;

struct NaiveBayesModel {
  struct Attribute {
    // nominal: counts[class][value]
    std::vector<std::vector<double>> counts;
    // numeric: per-class Gaussian
    std::vector<double> mean;
    std::vector<double> variance;
    bool operator==(const Attribute&) const = default;
  };

  Schema schema;
  std::vector<double> class_counts;
  std::vector<Attribute> attributes;  // indexed like schema.attributes; class slot unused

  bool operator==(const NaiveBayesModel&) const = default;
};

// Nominal attributes: add-one smoothed frequency tables. Numeric attributes:
// per-class mean and sample variance (floored at kVarianceFloor). Class
// priors are plain frequencies, so absent classes get probability 0.
NaiveBayesModel train_naive_bayes(const Dataset& train);

}  // namespace credrisk::ml

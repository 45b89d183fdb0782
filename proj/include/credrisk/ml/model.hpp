#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "credrisk/ingest/dataset.hpp"
#include "credrisk/ml/naive_bayes.hpp"
#include "credrisk/ml/pruned_tree.hpp"
#include "credrisk/ml/random_forest.hpp"

namespace credrisk::ml {

// Probabilities ordered like the model's class labels; sums to 1.
struct ClassDistribution {
  std::vector<std::string> labels;
  std::vector<double> probabilities;

  // Throws Error(invalid_argument) for an unknown label.
  double probability_of(std::string_view label) const;
  std::size_t argmax() const;  // first maximum
};

using AnyModel = std::variant<ForestModel, NaiveBayesModel, TreeModel>;

// forest: fraction of trees voting each class
// tree:   normalised class counts of the leaf
// NB:     normalised posterior
// All throw Error(schema_mismatch) when `x` does not fit the model schema.
ClassDistribution predict_proba(const ForestModel& model, const Instance& x);
ClassDistribution predict_proba(const TreeModel& model, const Instance& x);
ClassDistribution predict_proba(const NaiveBayesModel& model, const Instance& x);
ClassDistribution predict_proba(const AnyModel& model, const Instance& x);

std::size_t predict(const AnyModel& model, const Instance& x);

const Schema& schema_of(const AnyModel& model);
std::string_view kind_name(const AnyModel& model);

}  // namespace credrisk::ml

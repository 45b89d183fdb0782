#pragma once

#include <cstdint>
#include <vector>

#include "credrisk/ingest/dataset.hpp"
#include "credrisk/ml/decision_tree.hpp"

namespace credrisk::ml {

struct ForestParams {
  std::size_t n_trees = 100;
  // 0 selects floor(log2(m)) + 1 for m non-class attributes.
  std::size_t feature_subset_size = 0;
  std::uint64_t seed = 1;
  // Threads used for training; the model does not depend on it.
  std::size_t workers = 1;
};

struct ForestModel {
  Schema schema;
  std::vector<DecisionTree> trees;
  std::size_t feature_subset_size = 0;
  std::uint64_t seed = 0;

  std::size_t n_trees() const { return trees.size(); }
  const std::vector<std::string>& class_labels() const { return schema.class_labels(); }
  bool operator==(const ForestModel&) const = default;
};

std::size_t default_feature_subset_size(std::size_t num_attributes);

// Seed of tree `index`, a pure function of the master seed.
std::uint64_t derive_tree_seed(std::uint64_t master_seed, std::size_t index);

// Bagged information-gain trees. Each tree trains on a bootstrap sample of
// train.size() rows and examines a random attribute subset at every node.
ForestModel train_random_forest(const Dataset& train, const ForestParams& params);

}  // namespace credrisk::ml

#pragma once

#include <cstdint>

#include "credrisk/ingest/dataset.hpp"
#include "credrisk/ml/decision_tree.hpp"

namespace credrisk::ml {

struct TreeParams {
  double prune_fraction = 1.0 / 3.0;  // share of train held out for pruning
  std::uint64_t seed = 1;
};

struct TreeModel {
  Schema schema;
  DecisionTree tree;
  bool pruning_skipped = false;  // prune set came out empty
  bool operator==(const TreeModel&) const = default;
};

// Grows an information-gain tree on (1 - prune_fraction) of `train` and
// reduced-error prunes it against the rest. A subtree is replaced by a leaf
// whenever that does not increase errors on the prune set.
TreeModel train_pruned_tree(const Dataset& train, const TreeParams& params);

// Bottom-up reduced-error pruning of `tree` against `prune` rows; returns
// the number of prune-set errors after pruning.
std::size_t reduced_error_prune(DecisionTree& tree, const Dataset& prune);

}  // namespace credrisk::ml

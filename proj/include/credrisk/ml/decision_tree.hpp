#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "credrisk/ingest/dataset.hpp"

namespace credrisk::ml {

struct TreeNode {
  std::int32_t attribute = -1;  // -1 marks a leaf
  bool numeric = false;         // binary threshold split
  double threshold = 0;         // numeric split: child 0 if value <= threshold
  std::vector<std::uint32_t> children;
  std::vector<double> class_counts;  // training rows reaching this node

  bool is_leaf() const { return attribute < 0; }
  bool operator==(const TreeNode&) const = default;
};

// Information-gain decision tree stored as a flat node array, root at 0.
// Nominal splits have one child per domain value, numeric splits are binary.
struct DecisionTree {
  std::vector<TreeNode> nodes;
  // Class indices in preference order; the earliest wins a majority tie.
  std::vector<std::uint32_t> tie_order;

  std::uint32_t leaf_index(const Instance& x) const;
  std::size_t majority(const std::vector<double>& counts) const;
  std::size_t vote(const Instance& x) const { return majority(nodes[leaf_index(x)].class_counts); }

  std::size_t depth() const;
  std::size_t leaf_count() const;

  // Drops nodes unreachable from the root and renumbers children.
  void compact();

  bool operator==(const DecisionTree&) const = default;
};

struct GrowOptions {
  // Attributes examined per node; 0 or >= available means all of them.
  std::size_t feature_subset_size = 0;
  // true: stop when no examined attribute has positive gain (sampling
  // continues past feature_subset_size until one is found).
  // false: split whenever some attribute partitions the node, even at zero gain.
  bool require_positive_gain = true;
};

// Grows an unpruned tree on `rows` (indices into data.rows; duplicates allowed
// for bootstrap samples). All random choices (attribute sampling, gain ties,
// tie_order) draw from `rng`.
DecisionTree grow_tree(const Dataset& data, const std::vector<std::size_t>& rows,
                       const GrowOptions& options, std::mt19937_64& rng);

}  // namespace credrisk::ml

#include "credrisk/ml/pruned_tree.hpp"

#include <cmath>
#include <iostream>
#include <numeric>
#include <random>

#include "credrisk/error.hpp"

namespace credrisk::ml {

namespace {

std::size_t prune_node(DecisionTree& tree, std::uint32_t index, const Dataset& data,
                       const std::vector<std::size_t>& rows) {
  auto errors_as_leaf = [&] {
    std::size_t predicted = tree.majority(tree.nodes[index].class_counts);
    std::size_t e = 0;
    for (auto r : rows) e += data.class_of(data.rows[r]) != predicted;
    return e;
  };
  if (tree.nodes[index].is_leaf()) return errors_as_leaf();

  const auto node = tree.nodes[index];
  std::vector<std::vector<std::size_t>> parts(node.children.size());
  for (auto r : rows) {
    double v = data.rows[r][static_cast<std::size_t>(node.attribute)];
    std::size_t branch = node.numeric ? (v <= node.threshold ? 0 : 1) : static_cast<std::size_t>(v);
    parts[branch].push_back(r);
  }
  std::size_t subtree = 0;
  for (std::size_t c = 0; c < node.children.size(); ++c) {
    subtree += prune_node(tree, node.children[c], data, parts[c]);
  }
  std::size_t leaf = errors_as_leaf();
  if (leaf <= subtree) {
    tree.nodes[index].attribute = -1;
    tree.nodes[index].numeric = false;
    tree.nodes[index].threshold = 0;
    tree.nodes[index].children.clear();
    return leaf;
  }
  return subtree;
}

}  // namespace

std::size_t reduced_error_prune(DecisionTree& tree, const Dataset& prune) {
  std::vector<std::size_t> rows(prune.size());
  std::iota(rows.begin(), rows.end(), 0);
  std::size_t errors = prune_node(tree, 0, prune, rows);
  tree.compact();
  return errors;
}

TreeModel train_pruned_tree(const Dataset& train, const TreeParams& params) {
  if (train.empty()) throw Error(ErrorCode::invalid_argument, "empty training set");
  if (!(params.prune_fraction >= 0.0 && params.prune_fraction < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "prune_fraction must be in [0, 1)");
  }
  std::mt19937_64 rng(params.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t n_prune = 0;
  if (params.prune_fraction > 0) {
    std::shuffle(order.begin(), order.end(), rng);
    n_prune = static_cast<std::size_t>(
        std::floor(params.prune_fraction * static_cast<double>(train.size())));
  }
  std::vector<std::size_t> grow_rows(order.begin() + static_cast<std::ptrdiff_t>(n_prune),
                                     order.end());
  std::vector<std::size_t> prune_rows(order.begin(),
                                      order.begin() + static_cast<std::ptrdiff_t>(n_prune));

  TreeModel model;
  model.schema = train.schema;
  model.tree = grow_tree(train, grow_rows, GrowOptions{0, false}, rng);
  if (params.prune_fraction > 0) {
    if (prune_rows.empty()) {
      model.pruning_skipped = true;
      std::clog << "warning: prune set is empty (" << train.size()
                << " training rows); tree left unpruned\n";
    } else {
      reduced_error_prune(model.tree, train.subset(prune_rows));
    }
  }
  return model;
}

}  // namespace credrisk::ml

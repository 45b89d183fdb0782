#include "credrisk/ml/random_forest.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "credrisk/error.hpp"

namespace credrisk::ml {

std::size_t default_feature_subset_size(std::size_t num_attributes) {
  if (num_attributes == 0) return 1;
  return static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(num_attributes)))) + 1;
}

std::uint64_t derive_tree_seed(std::uint64_t master_seed, std::size_t index) {
  // splitmix64 finaliser
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ForestModel train_random_forest(const Dataset& train, const ForestParams& params) {
  if (train.empty()) throw Error(ErrorCode::invalid_argument, "empty training set");
  if (params.n_trees == 0) throw Error(ErrorCode::invalid_argument, "n_trees must be >= 1");

  const std::size_t m = train.attributes().size() - 1;
  std::size_t subset = params.feature_subset_size == 0 ? default_feature_subset_size(m)
                                                       : std::min(params.feature_subset_size, m);

  ForestModel model;
  model.schema = train.schema;
  model.feature_subset_size = subset;
  model.seed = params.seed;
  model.trees.resize(params.n_trees);

  GrowOptions opts{subset, true};
  auto build = [&](std::size_t t) {
    std::mt19937_64 rng(derive_tree_seed(params.seed, t));
    std::uniform_int_distribution<std::size_t> draw(0, train.size() - 1);
    std::vector<std::size_t> sample(train.size());
    for (auto& s : sample) s = draw(rng);
    model.trees[t] = grow_tree(train, sample, opts, rng);
  };

  std::size_t workers = std::max<std::size_t>(1, std::min(params.workers, params.n_trees));
  if (workers == 1) {
    for (std::size_t t = 0; t < params.n_trees; ++t) build(t);
    return model;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < params.n_trees; t = next++) build(t);
    });
  }
  pool.clear();
  return model;
}

}  // namespace credrisk::ml

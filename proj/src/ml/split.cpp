#include "credrisk/ml/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "credrisk/error.hpp"

namespace credrisk::ml {

TrainTestSplit split_dataset(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "train_fraction must be in (0, 1)");
  }
  if (ds.empty()) throw Error(ErrorCode::invalid_argument, "cannot split an empty dataset");

  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(ds.size())));
  std::vector<std::size_t> train_idx(order.begin(), order.begin() + n_train);
  std::vector<std::size_t> test_idx(order.begin() + n_train, order.end());
  return {ds.subset(train_idx), ds.subset(test_idx)};
}

}  // namespace credrisk::ml

#pragma once

#include <cstdint>

#include "credrisk/ingest/dataset.hpp"

namespace credrisk::ml {

struct TrainTestSplit {
  Dataset train;
  Dataset test;
};

// Seeded shuffle, then the first round(fraction * n) rows go to train.
// Requires 0 < train_fraction < 1 and a non-empty dataset.
TrainTestSplit split_dataset(const Dataset& ds, double train_fraction, std::uint64_t seed);

}  // namespace credrisk::ml

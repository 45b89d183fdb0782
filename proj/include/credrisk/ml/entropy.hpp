#pragma once

#include <cmath>
#include <numeric>
#include <span>

namespace credrisk::ml {

// Shannon entropy in bits of a count vector. Zero counts contribute 0.
inline double entropy_bits(std::span<const double> counts) {
  double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (total <= 0) return 0.0;
  double h = 0;
  for (double c : counts) {
    if (c > 0) {
      double p = c / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

}  // namespace credrisk::ml

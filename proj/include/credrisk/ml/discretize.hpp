#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace credrisk::ml {

// Supervised entropy-minimising discretisation with the Fayyad & Irani MDL
// stopping rule, applied recursively. The MDL term counts candidate cut
// points (boundaries between distinct values) in the current subset, as in
// WEKA's supervised Discretize filter.
//
// `values[i]` pairs with `classes[i]` (< num_classes). Returns ascending cut
// points; a value v falls in bin = number of cuts strictly below v.
std::vector<double> mdl_cut_points(std::span<const double> values,
                                   std::span<const std::size_t> classes,
                                   std::size_t num_classes);

std::size_t bin_of(double value, std::span<const double> cuts);

}  // namespace credrisk::ml

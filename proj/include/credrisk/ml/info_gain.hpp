#pragma once

#include <set>
#include <string>
#include <vector>

#include "credrisk/ingest/dataset.hpp"

namespace credrisk::ml {

struct RankedAttribute {
  std::string name;
  double info_gain = 0;  // bits
};

// Sorted by descending gain; ties keep attribute order.
struct AttributeRanking {
  std::vector<RankedAttribute> entries;
};

// H(class) - H(class | attribute) in bits. Numeric attributes are
// discretised with mdl_cut_points first.
double info_gain(const Dataset& ds, std::size_t attribute);

// Throws Error(degenerate_class) when fewer than two class labels occur.
AttributeRanking info_gain_rank(const Dataset& ds);

// Attributes with gain strictly above `epsilon`.
std::set<std::string> select_features(const AttributeRanking& ranking, double epsilon = 0.0);

// Keeps the named attributes plus the class, in original order.
Dataset select_columns(const Dataset& ds, const std::set<std::string>& keep);

}  // namespace credrisk::ml

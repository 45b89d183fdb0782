#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "credrisk/scoring/risk.hpp"

namespace credrisk {

// Bounded window of recent risk triples for one transaction category with
// exact componentwise medians (mean of the two middle values for an even
// window). Each component is kept in a sorted vector next to the FIFO.
class CategoryMedians {
 public:
  explicit CategoryMedians(std::size_t capacity = 500);

  void add(const RiskTriple& t);
  std::optional<RiskTriple> medians() const;

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return window_.size(); }
  const std::deque<RiskTriple>& window() const { return window_; }

  bool operator==(const CategoryMedians& o) const {
    return capacity_ == o.capacity_ && window_ == o.window_;
  }

 private:
  std::size_t capacity_;
  std::deque<RiskTriple> window_;
  std::vector<double> online_, offline_, overall_;
};

CategoryMedians update_medians(CategoryMedians medians, const RiskTriple& triple);

// Median of an already sorted range.
double sorted_median(const std::vector<double>& sorted);

}  // namespace credrisk

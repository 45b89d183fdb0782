#include "credrisk/store/category_medians.hpp"

#include <algorithm>

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

void insert_sorted(std::vector<double>& v, double x) {
  v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

void erase_sorted(std::vector<double>& v, double x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

double sorted_median(const std::vector<double>& s) {
  std::size_t n = s.size();
  if (n % 2 == 1) return s[n / 2];
  return (s[n / 2 - 1] + s[n / 2]) / 2.0;
}

CategoryMedians::CategoryMedians(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw Error(ErrorCode::invalid_argument, "median window must be >= 1");
}

void CategoryMedians::add(const RiskTriple& t) {
  if (window_.size() == capacity_) {
    const auto& old = window_.front();
    erase_sorted(online_, old.online);
    erase_sorted(offline_, old.offline);
    erase_sorted(overall_, old.overall);
    window_.pop_front();
  }
  window_.push_back(t);
  insert_sorted(online_, t.online);
  insert_sorted(offline_, t.offline);
  insert_sorted(overall_, t.overall);
}

std::optional<RiskTriple> CategoryMedians::medians() const {
  if (window_.empty()) return std::nullopt;
  return RiskTriple{sorted_median(online_), sorted_median(offline_), sorted_median(overall_)};
}

CategoryMedians update_medians(CategoryMedians medians, const RiskTriple& triple) {
  medians.add(triple);
  return medians;
}

}  // namespace credrisk

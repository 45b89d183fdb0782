#include "credrisk/ml/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "credrisk/error.hpp"
#include "credrisk/ml/entropy.hpp"

namespace credrisk::ml {

namespace {

struct Point {
  double value;
  std::size_t cls;
};

std::size_t nonzero(const std::vector<double>& counts) {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }));
}

void cut_subset(std::span<const Point> pts, std::size_t num_classes, std::vector<double>& out) {
  const std::size_t n = pts.size();
  if (n < 2) return;

  std::vector<double> prior(num_classes, 0.0);
  for (const auto& p : pts) prior[p.cls] += 1;
  const double prior_entropy = entropy_bits(prior);

  std::vector<double> left(num_classes, 0.0);
  std::vector<double> right = prior;
  std::vector<double> best_left, best_right;
  double best_entropy = prior_entropy;
  std::size_t best_index = n;
  std::size_t candidates = 0;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    left[pts[i].cls] += 1;
    right[pts[i].cls] -= 1;
    if (pts[i].value < pts[i + 1].value) {
      ++candidates;
      double nl = static_cast<double>(i + 1);
      double nr = static_cast<double>(n - i - 1);
      double e = (nl * entropy_bits(left) + nr * entropy_bits(right)) / static_cast<double>(n);
      if (e < best_entropy) {
        best_entropy = e;
        best_index = i;
        best_left = left;
        best_right = right;
      }
    }
  }
  if (best_index == n) return;
  double gain = prior_entropy - best_entropy;
  if (gain <= 0) return;

  double k = static_cast<double>(nonzero(prior));
  double k1 = static_cast<double>(nonzero(best_left));
  double k2 = static_cast<double>(nonzero(best_right));
  double delta = std::log2(std::pow(3.0, k) - 2.0) -
                 (k * prior_entropy - k1 * entropy_bits(best_left) -
                  k2 * entropy_bits(best_right));
  double threshold =
      (std::log2(static_cast<double>(candidates)) + delta) / static_cast<double>(n);
  if (!(gain > threshold)) return;

  cut_subset(pts.subspan(0, best_index + 1), num_classes, out);
  out.push_back((pts[best_index].value + pts[best_index + 1].value) / 2);
  cut_subset(pts.subspan(best_index + 1), num_classes, out);
}

}  // namespace

std::vector<double> mdl_cut_points(std::span<const double> values,
                                   std::span<const std::size_t> classes,
                                   std::size_t num_classes) {
  if (values.size() != classes.size()) {
    throw Error(ErrorCode::invalid_argument, "values/classes length mismatch");
  }
  std::vector<Point> pts(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) pts[i] = {values[i], classes[i]};
  std::stable_sort(pts.begin(), pts.end(),
                   [](const Point& a, const Point& b) { return a.value < b.value; });
  std::vector<double> cuts;
  cut_subset(pts, num_classes, cuts);
  return cuts;
}

std::size_t bin_of(double value, std::span<const double> cuts) {
  return static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), value) -
                                  cuts.begin());
}

}  // namespace credrisk::ml

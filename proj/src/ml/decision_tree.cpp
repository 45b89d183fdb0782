#include "credrisk/ml/decision_tree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

#include "credrisk/ml/entropy.hpp"

namespace credrisk::ml {

namespace {

constexpr double kGainEpsilon = 1e-12;

struct Candidate {
  std::size_t attribute = 0;
  double gain = 0;
  double threshold = 0;
};

class Grower {
 public:
  Grower(const Dataset& data, const GrowOptions& opts, std::mt19937_64& rng, DecisionTree& tree)
      : data_(data), opts_(opts), rng_(rng), tree_(tree), k_(data.schema.num_classes()),
        used_(data.attributes().size(), false) {}

  std::uint32_t build(const std::vector<std::size_t>& rows, const std::vector<double>* parent) {
    auto index = static_cast<std::uint32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    if (rows.empty()) {
      tree_.nodes[index].class_counts = *parent;
      return index;
    }
    auto counts = class_counts(rows);
    tree_.nodes[index].class_counts = counts;
    if (std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1) {
      return index;
    }

    auto split = choose_split(rows, counts);
    if (!split) return index;

    const auto& spec = data_.attributes()[split->attribute];
    std::vector<std::vector<std::size_t>> parts(spec.is_nominal() ? spec.domain.size() : 2);
    for (auto r : rows) parts[route(split->attribute, split->threshold, data_.rows[r])].push_back(r);

    tree_.nodes[index].attribute = static_cast<std::int32_t>(split->attribute);
    tree_.nodes[index].numeric = !spec.is_nominal();
    tree_.nodes[index].threshold = split->threshold;

    bool mark = spec.is_nominal();
    if (mark) used_[split->attribute] = true;
    std::vector<std::uint32_t> children;
    for (const auto& part : parts) children.push_back(build(part, &counts));
    if (mark) used_[split->attribute] = false;
    tree_.nodes[index].children = std::move(children);
    return index;
  }

 private:
  std::vector<double> class_counts(const std::vector<std::size_t>& rows) const {
    std::vector<double> counts(k_, 0.0);
    for (auto r : rows) counts[data_.class_of(data_.rows[r])] += 1;
    return counts;
  }

  std::size_t route(std::size_t attribute, double threshold, const Instance& x) const {
    if (data_.attributes()[attribute].is_nominal()) return static_cast<std::size_t>(x[attribute]);
    return x[attribute] <= threshold ? 0 : 1;
  }

  // Best split on one attribute; nullopt if it cannot partition the rows.
  std::optional<Candidate> evaluate(std::size_t a, const std::vector<std::size_t>& rows,
                                    double parent_entropy) const {
    const auto& spec = data_.attributes()[a];
    const double n = static_cast<double>(rows.size());
    if (spec.is_nominal()) {
      std::vector<std::vector<double>> joint(spec.domain.size(), std::vector<double>(k_, 0.0));
      std::vector<double> sizes(spec.domain.size(), 0.0);
      for (auto r : rows) {
        auto v = static_cast<std::size_t>(data_.rows[r][a]);
        joint[v][data_.class_of(data_.rows[r])] += 1;
        sizes[v] += 1;
      }
      if (std::count_if(sizes.begin(), sizes.end(), [](double s) { return s > 0; }) < 2) {
        return std::nullopt;
      }
      double cond = 0;
      for (std::size_t v = 0; v < joint.size(); ++v) {
        if (sizes[v] > 0) cond += sizes[v] / n * entropy_bits(joint[v]);
      }
      return Candidate{a, parent_entropy - cond, 0.0};
    }

    std::vector<std::pair<double, std::size_t>> pts;
    pts.reserve(rows.size());
    for (auto r : rows) pts.emplace_back(data_.rows[r][a], data_.class_of(data_.rows[r]));
    std::sort(pts.begin(), pts.end());
    if (pts.front().first == pts.back().first) return std::nullopt;

    std::vector<double> left(k_, 0.0);
    std::vector<double> right(k_, 0.0);
    for (const auto& p : pts) right[p.second] += 1;
    std::optional<Candidate> best;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      left[pts[i].second] += 1;
      right[pts[i].second] -= 1;
      if (pts[i].first == pts[i + 1].first) continue;
      double nl = static_cast<double>(i + 1);
      double cond = (nl * entropy_bits(left) + (n - nl) * entropy_bits(right)) / n;
      double gain = parent_entropy - cond;
      if (!best || gain > best->gain + kGainEpsilon) {
        best = Candidate{a, gain, (pts[i].first + pts[i + 1].first) / 2};
      }
    }
    return best;
  }

  std::optional<Candidate> choose_split(const std::vector<std::size_t>& rows,
                                        const std::vector<double>& counts) {
    std::vector<std::size_t> pool;
    for (std::size_t a = 0; a < data_.attributes().size(); ++a) {
      if (a != data_.class_index() && !used_[a]) pool.push_back(a);
    }
    if (pool.empty()) return std::nullopt;

    std::size_t k = opts_.feature_subset_size;
    bool sampled = k > 0 && k < pool.size();
    if (sampled) std::shuffle(pool.begin(), pool.end(), rng_);

    const double parent_entropy = entropy_bits(counts);
    std::vector<Candidate> best;
    bool found_positive = false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (sampled && i >= k && (found_positive || !opts_.require_positive_gain)) break;
      auto c = evaluate(pool[i], rows, parent_entropy);
      if (!c) continue;
      if (c->gain > kGainEpsilon) found_positive = true;
      if (best.empty() || c->gain > best.front().gain + kGainEpsilon) {
        best.assign(1, *c);
      } else if (c->gain >= best.front().gain - kGainEpsilon) {
        best.push_back(*c);
      }
    }
    if (best.empty()) return std::nullopt;
    if (opts_.require_positive_gain && !found_positive) return std::nullopt;
    if (best.size() == 1) return best.front();
    std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
    return best[pick(rng_)];
  }

  const Dataset& data_;
  const GrowOptions& opts_;
  std::mt19937_64& rng_;
  DecisionTree& tree_;
  std::size_t k_;
  std::vector<bool> used_;
};

}  // namespace

std::uint32_t DecisionTree::leaf_index(const Instance& x) const {
  std::uint32_t i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& n = nodes[i];
    double v = x[static_cast<std::size_t>(n.attribute)];
    std::size_t branch = n.numeric ? (v <= n.threshold ? 0 : 1) : static_cast<std::size_t>(v);
    i = n.children[branch];
  }
  return i;
}

std::size_t DecisionTree::majority(const std::vector<double>& counts) const {
  if (tie_order.empty()) {
    return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) -
                                    counts.begin());
  }
  std::size_t best = tie_order.front();
  for (auto c : tie_order) {
    if (counts[c] > counts[best]) best = c;
  }
  return best;
}

std::size_t DecisionTree::depth() const {
  std::function<std::size_t(std::uint32_t)> rec = [&](std::uint32_t i) -> std::size_t {
    std::size_t d = 0;
    for (auto c : nodes[i].children) d = std::max(d, 1 + rec(c));
    return d;
  };
  return nodes.empty() ? 0 : rec(0);
}

std::size_t DecisionTree::leaf_count() const {
  std::function<std::size_t(std::uint32_t)> rec = [&](std::uint32_t i) -> std::size_t {
    if (nodes[i].is_leaf()) return 1;
    std::size_t s = 0;
    for (auto c : nodes[i].children) s += rec(c);
    return s;
  };
  return nodes.empty() ? 0 : rec(0);
}

void DecisionTree::compact() {
  std::vector<TreeNode> out;
  std::function<std::uint32_t(std::uint32_t)> copy = [&](std::uint32_t i) -> std::uint32_t {
    auto idx = static_cast<std::uint32_t>(out.size());
    out.push_back(nodes[i]);
    if (out[idx].is_leaf()) {
      out[idx].children.clear();
      return idx;
    }
    std::vector<std::uint32_t> kids;
    for (auto c : nodes[i].children) kids.push_back(copy(c));
    out[idx].children = std::move(kids);
    return idx;
  };
  if (!nodes.empty()) copy(0);
  nodes = std::move(out);
}

DecisionTree grow_tree(const Dataset& data, const std::vector<std::size_t>& rows,
                       const GrowOptions& options, std::mt19937_64& rng) {
  DecisionTree tree;
  tree.tie_order.resize(data.schema.num_classes());
  std::iota(tree.tie_order.begin(), tree.tie_order.end(), 0u);
  std::shuffle(tree.tie_order.begin(), tree.tie_order.end(), rng);

  std::vector<double> fallback(data.schema.num_classes(), 0.0);
  Grower grower(data, options, rng, tree);
  grower.build(rows, &fallback);
  return tree;
}

}  // namespace credrisk::ml

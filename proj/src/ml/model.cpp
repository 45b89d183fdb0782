#include "credrisk/ml/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "credrisk/error.hpp"

namespace credrisk::ml {

double ClassDistribution::probability_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return probabilities[i];
  }
  throw Error(ErrorCode::invalid_argument, "unknown class label '" + std::string(label) + "'");
}

std::size_t ClassDistribution::argmax() const {
  return static_cast<std::size_t>(std::max_element(probabilities.begin(), probabilities.end()) -
                                  probabilities.begin());
}

ClassDistribution predict_proba(const ForestModel& model, const Instance& x) {
  model.schema.check_instance(x);
  std::vector<double> votes(model.schema.num_classes(), 0.0);
  for (const auto& tree : model.trees) votes[tree.vote(x)] += 1;
  for (auto& v : votes) v /= static_cast<double>(model.trees.size());
  return {model.schema.class_labels(), std::move(votes)};
}

ClassDistribution predict_proba(const TreeModel& model, const Instance& x) {
  model.schema.check_instance(x);
  auto counts = model.tree.nodes[model.tree.leaf_index(x)].class_counts;
  double total = 0;
  for (double c : counts) total += c;
  if (total <= 0) {
    std::fill(counts.begin(), counts.end(), 1.0 / static_cast<double>(counts.size()));
  } else {
    for (auto& c : counts) c /= total;
  }
  return {model.schema.class_labels(), std::move(counts)};
}

ClassDistribution predict_proba(const NaiveBayesModel& model, const Instance& x) {
  model.schema.check_instance(x);
  const std::size_t k = model.schema.num_classes();
  double n = 0;
  for (double c : model.class_counts) n += c;

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> logp(k, kNegInf);
  for (std::size_t c = 0; c < k; ++c) {
    if (model.class_counts[c] <= 0) continue;
    double lp = std::log(model.class_counts[c] / n);
    for (std::size_t a = 0; a < model.attributes.size(); ++a) {
      if (a == model.schema.class_index) continue;
      const auto& am = model.attributes[a];
      if (model.schema.attributes[a].is_nominal()) {
        const auto& row = am.counts[c];
        double denom = model.class_counts[c] + static_cast<double>(row.size());
        lp += std::log((row[static_cast<std::size_t>(x[a])] + 1.0) / denom);
      } else {
        double var = am.variance[c];
        double d = x[a] - am.mean[c];
        lp += -0.5 * std::log(2 * std::numbers::pi * var) - d * d / (2 * var);
      }
    }
    logp[c] = lp;
  }
  double top = *std::max_element(logp.begin(), logp.end());
  std::vector<double> p(k, 0.0);
  double sum = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (logp[c] == kNegInf) continue;
    p[c] = std::exp(logp[c] - top);
    sum += p[c];
  }
  for (auto& v : p) v /= sum;
  return {model.schema.class_labels(), std::move(p)};
}

ClassDistribution predict_proba(const AnyModel& model, const Instance& x) {
  return std::visit([&](const auto& m) { return predict_proba(m, x); }, model);
}

std::size_t predict(const AnyModel& model, const Instance& x) {
  return predict_proba(model, x).argmax();
}

const Schema& schema_of(const AnyModel& model) {
  return std::visit([](const auto& m) -> const Schema& { return m.schema; }, model);
}

std::string_view kind_name(const AnyModel& model) {
  struct {
    std::string_view operator()(const ForestModel&) const { return "random_forest"; }
    std::string_view operator()(const NaiveBayesModel&) const { return "naive_bayes"; }
    std::string_view operator()(const TreeModel&) const { return "pruned_tree"; }
  } name;
  return std::visit(name, model);
}

}  // namespace credrisk::ml

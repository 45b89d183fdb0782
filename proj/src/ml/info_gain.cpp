#include "credrisk/ml/info_gain.hpp"

#include <algorithm>

#include "credrisk/error.hpp"
#include "credrisk/ml/discretize.hpp"
#include "credrisk/ml/entropy.hpp"

namespace credrisk::ml {

namespace {

// counts[bin][class]
double conditional_entropy(const std::vector<std::vector<double>>& counts, double total) {
  double h = 0;
  for (const auto& row : counts) {
    double n = 0;
    for (double c : row) n += c;
    if (n > 0) h += n / total * entropy_bits(row);
  }
  return h;
}

}  // namespace

double info_gain(const Dataset& ds, std::size_t attribute) {
  const auto& spec = ds.attributes().at(attribute);
  const std::size_t k = ds.schema.num_classes();
  const double total = static_cast<double>(ds.size());
  if (ds.empty()) return 0.0;

  std::vector<double> class_counts(k, 0.0);
  for (const auto& row : ds.rows) class_counts[ds.class_of(row)] += 1;

  std::vector<std::vector<double>> joint;
  if (spec.is_nominal()) {
    joint.assign(spec.domain.size(), std::vector<double>(k, 0.0));
    for (const auto& row : ds.rows) {
      joint[static_cast<std::size_t>(row[attribute])][ds.class_of(row)] += 1;
    }
  } else {
    std::vector<double> values;
    std::vector<std::size_t> classes;
    values.reserve(ds.size());
    classes.reserve(ds.size());
    for (const auto& row : ds.rows) {
      values.push_back(row[attribute]);
      classes.push_back(ds.class_of(row));
    }
    auto cuts = mdl_cut_points(values, classes, k);
    joint.assign(cuts.size() + 1, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < values.size(); ++i) {
      joint[bin_of(values[i], cuts)][classes[i]] += 1;
    }
  }
  double gain = entropy_bits(class_counts) - conditional_entropy(joint, total);
  return std::max(gain, 0.0);
}

AttributeRanking info_gain_rank(const Dataset& ds) {
  auto counts = ds.class_counts();
  auto present = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; });
  if (present < 2) {
    throw Error(ErrorCode::degenerate_class, "degenerate class: fewer than 2 labels present");
  }
  AttributeRanking ranking;
  for (std::size_t a = 0; a < ds.attributes().size(); ++a) {
    if (a == ds.class_index()) continue;
    ranking.entries.push_back({ds.attributes()[a].name, info_gain(ds, a)});
  }
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const auto& x, const auto& y) { return x.info_gain > y.info_gain; });
  return ranking;
}

std::set<std::string> select_features(const AttributeRanking& ranking, double epsilon) {
  std::set<std::string> out;
  for (const auto& e : ranking.entries) {
    if (e.info_gain > epsilon) out.insert(e.name);
  }
  return out;
}

Dataset select_columns(const Dataset& ds, const std::set<std::string>& keep) {
  std::vector<std::size_t> cols;
  Dataset out;
  out.name = ds.name;
  for (std::size_t a = 0; a < ds.attributes().size(); ++a) {
    if (a == ds.class_index() || keep.contains(ds.attributes()[a].name)) {
      if (a == ds.class_index()) out.schema.class_index = cols.size();
      cols.push_back(a);
      out.schema.attributes.push_back(ds.attributes()[a]);
    }
  }
  out.rows.reserve(ds.size());
  for (const auto& row : ds.rows) {
    Instance r;
    r.reserve(cols.size());
    for (auto c : cols) r.push_back(row[c]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace credrisk::ml

#include "credrisk/ml/model_io.hpp"

#include <json.hpp>

#include "credrisk/error.hpp"

namespace credrisk::ml {

namespace {

using nlohmann::json;

json schema_to_json(const Schema& s) {
  json attrs = json::array();
  for (const auto& a : s.attributes) {
    json j = {{"name", a.name}, {"kind", a.is_nominal() ? "nominal" : "numeric"}};
    if (a.is_nominal()) j["domain"] = a.domain;
    attrs.push_back(std::move(j));
  }
  return {{"class_index", s.class_index}, {"attributes", std::move(attrs)}};
}

Schema schema_from_json(const json& j) {
  Schema s;
  for (const auto& a : j.at("attributes")) {
    auto kind = a.at("kind").get<std::string>();
    if (kind == "nominal") {
      s.attributes.push_back(AttributeSpec::nominal(a.at("name").get<std::string>(),
                                                    a.at("domain").get<std::vector<std::string>>()));
    } else if (kind == "numeric") {
      s.attributes.push_back(AttributeSpec::numeric(a.at("name").get<std::string>()));
    } else {
      throw Error(ErrorCode::parse, "model: unknown attribute kind '" + kind + "'");
    }
  }
  s.class_index = j.at("class_index").get<std::size_t>();
  if (s.class_index >= s.attributes.size()) throw Error(ErrorCode::parse, "model: bad class index");
  return s;
}

json tree_to_json(const DecisionTree& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes) {
    json j = {{"k", n.class_counts}};
    if (!n.is_leaf()) {
      j["a"] = n.attribute;
      j["c"] = n.children;
      if (n.numeric) j["t"] = n.threshold;
    }
    nodes.push_back(std::move(j));
  }
  return {{"tie_order", t.tie_order}, {"nodes", std::move(nodes)}};
}

DecisionTree tree_from_json(const json& j) {
  DecisionTree t;
  t.tie_order = j.at("tie_order").get<std::vector<std::uint32_t>>();
  for (const auto& n : j.at("nodes")) {
    TreeNode node;
    node.class_counts = n.at("k").get<std::vector<double>>();
    if (n.contains("a")) {
      node.attribute = n.at("a").get<std::int32_t>();
      node.children = n.at("c").get<std::vector<std::uint32_t>>();
      if (n.contains("t")) {
        node.numeric = true;
        node.threshold = n.at("t").get<double>();
      }
    }
    t.nodes.push_back(std::move(node));
  }
  for (const auto& n : t.nodes) {
    for (auto c : n.children) {
      if (c >= t.nodes.size()) throw Error(ErrorCode::parse, "model: dangling tree child");
    }
  }
  if (t.nodes.empty()) throw Error(ErrorCode::parse, "model: empty tree");
  return t;
}

struct Writer {
  json operator()(const ForestModel& m) const {
    json trees = json::array();
    for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
    return {{"feature_subset_size", m.feature_subset_size},
            {"seed", m.seed},
            {"trees", std::move(trees)}};
  }
  json operator()(const NaiveBayesModel& m) const {
    json attrs = json::array();
    for (const auto& a : m.attributes) {
      attrs.push_back({{"counts", a.counts}, {"mean", a.mean}, {"variance", a.variance}});
    }
    return {{"class_counts", m.class_counts}, {"attributes", std::move(attrs)}};
  }
  json operator()(const TreeModel& m) const {
    return {{"pruning_skipped", m.pruning_skipped}, {"tree", tree_to_json(m.tree)}};
  }
};

}  // namespace

void save_model(std::ostream& out, const AnyModel& model) {
  json doc = {
      {"format", "credrisk-model"},
      {"version", kModelFormatVersion},
      {"kind", std::string(kind_name(model))},
      {"schema", schema_to_json(schema_of(model))},
      {"model", std::visit(Writer{}, model)},
  };
  out << doc.dump() << '\n';
  if (!out) throw Error(ErrorCode::storage, "failed to write model");
}

AnyModel load_model(std::istream& in) {
  try {
    json doc = json::parse(in);
    if (doc.at("format") != "credrisk-model") throw Error(ErrorCode::parse, "not a model file");
    if (doc.at("version") != kModelFormatVersion) {
      throw Error(ErrorCode::unsupported, "unsupported model version " + doc.at("version").dump());
    }
    Schema schema = schema_from_json(doc.at("schema"));
    const auto& body = doc.at("model");
    auto kind = doc.at("kind").get<std::string>();
    if (kind == "random_forest") {
      ForestModel m;
      m.schema = std::move(schema);
      m.feature_subset_size = body.at("feature_subset_size").get<std::size_t>();
      m.seed = body.at("seed").get<std::uint64_t>();
      for (const auto& t : body.at("trees")) m.trees.push_back(tree_from_json(t));
      if (m.trees.empty()) throw Error(ErrorCode::parse, "model: forest has no trees");
      return m;
    }
    if (kind == "naive_bayes") {
      NaiveBayesModel m;
      m.schema = std::move(schema);
      m.class_counts = body.at("class_counts").get<std::vector<double>>();
      for (const auto& a : body.at("attributes")) {
        m.attributes.push_back({a.at("counts").get<std::vector<std::vector<double>>>(),
                                a.at("mean").get<std::vector<double>>(),
                                a.at("variance").get<std::vector<double>>()});
      }
      return m;
    }
    if (kind == "pruned_tree") {
      TreeModel m;
      m.schema = std::move(schema);
      m.pruning_skipped = body.at("pruning_skipped").get<bool>();
      m.tree = tree_from_json(body.at("tree"));
      return m;
    }
    throw Error(ErrorCode::unsupported, "unknown model kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("model: ") + e.what());
  }
}

}  // namespace credrisk::ml

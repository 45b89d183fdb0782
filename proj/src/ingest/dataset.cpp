#include "credrisk/ingest/dataset.hpp"

#include <cmath>
#include <set>

#include "credrisk/error.hpp"

namespace credrisk {

AttributeSpec AttributeSpec::nominal(std::string name, std::vector<std::string> domain) {
  if (domain.empty()) {
    throw Error(ErrorCode::schema_mismatch, "nominal attribute '" + name + "' has empty domain");
  }
  std::set<std::string> seen(domain.begin(), domain.end());
  if (seen.size() != domain.size()) {
    throw Error(ErrorCode::schema_mismatch,
                "nominal attribute '" + name + "' has duplicate values");
  }
  return AttributeSpec{std::move(name), Kind::nominal, std::move(domain)};
}

AttributeSpec AttributeSpec::numeric(std::string name) {
  return AttributeSpec{std::move(name), Kind::numeric, {}};
}

std::optional<std::size_t> AttributeSpec::index_of(std::string_view value) const {
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] == value) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Schema::find(std::string_view name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == name) return i;
  }
  return std::nullopt;
}

void Schema::check_instance(const Instance& row) const {
  if (row.size() != attributes.size()) {
    throw Error(ErrorCode::schema_mismatch,
                "instance has " + std::to_string(row.size()) + " values, schema has " +
                    std::to_string(attributes.size()));
  }
  for (std::size_t a = 0; a < attributes.size(); ++a) {
    const auto& spec = attributes[a];
    if (!spec.is_nominal()) {
      if (!std::isfinite(row[a])) {
        throw Error(ErrorCode::schema_mismatch, "non-finite value for '" + spec.name + "'");
      }
      continue;
    }
    double v = row[a];
    if (v < 0 || v >= static_cast<double>(spec.domain.size()) || v != std::floor(v)) {
      throw Error(ErrorCode::schema_mismatch, "value out of domain for '" + spec.name + "'");
    }
  }
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(schema.num_classes(), 0);
  for (const auto& row : rows) ++counts[class_of(row)];
  return counts;
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
  Dataset out{name, schema, {}};
  out.rows.reserve(indices.size());
  for (auto i : indices) out.rows.push_back(rows.at(i));
  return out;
}

void Dataset::validate() const {
  if (schema.class_index >= schema.attributes.size()) {
    throw Error(ErrorCode::schema_mismatch, "class index out of range");
  }
  const auto& cls = schema.class_attribute();
  if (!cls.is_nominal() || cls.domain.size() < 2) {
    throw Error(ErrorCode::schema_mismatch,
                "class attribute '" + cls.name + "' must be nominal with >= 2 labels");
  }
  for (const auto& row : rows) schema.check_instance(row);
}

}  // namespace credrisk

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace credrisk {

struct AttributeSpec {
  enum class Kind { nominal, numeric };

  std::string name;
  Kind kind = Kind::numeric;
  std::vector<std::string> domain;  // nominal only

  static AttributeSpec nominal(std::string name, std::vector<std::string> domain);
  static AttributeSpec numeric(std::string name);

  bool is_nominal() const { return kind == Kind::nominal; }
  std::optional<std::size_t> index_of(std::string_view value) const;

  bool operator==(const AttributeSpec&) const = default;
};

// One row. Nominal values are stored as the index into the attribute's
// domain, numeric values as-is. The class column is part of the row.
using Instance = std::vector<double>;

// Attribute layout shared by datasets and trained models.
struct Schema {
  std::vector<AttributeSpec> attributes;
  std::size_t class_index = 0;

  const AttributeSpec& class_attribute() const { return attributes.at(class_index); }
  std::size_t num_classes() const { return class_attribute().domain.size(); }
  const std::vector<std::string>& class_labels() const { return class_attribute().domain; }
  std::optional<std::size_t> find(std::string_view name) const;

  // Throws Error(schema_mismatch) if `row` does not fit this schema.
  void check_instance(const Instance& row) const;

  bool operator==(const Schema&) const = default;
};

struct Dataset {
  std::string name;
  Schema schema;
  std::vector<Instance> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  const std::vector<AttributeSpec>& attributes() const { return schema.attributes; }
  std::size_t class_index() const { return schema.class_index; }
  std::size_t class_of(const Instance& row) const {
    return static_cast<std::size_t>(row[schema.class_index]);
  }
  std::vector<std::size_t> class_counts() const;

  // Same schema, selected rows.
  Dataset subset(const std::vector<std::size_t>& indices) const;

  // Checks every dataset invariant; throws Error(schema_mismatch).
  void validate() const;
};

}  // namespace credrisk

#include "credrisk/ingest/german_credit.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

std::vector<std::string> codes(std::string_view prefix, int first, int last) {
  std::vector<std::string> out;
  for (int i = first; i <= last; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

}  // namespace

Schema german_credit_schema() {
  using A = AttributeSpec;
  Schema s;
  s.attributes = {
      A::nominal("status_of_existing_checking_account", codes("A1", 1, 4)),
      A::numeric("duration_in_month"),
      A::nominal("credit_history", codes("A3", 0, 4)),
      A::nominal("purpose", codes("A4", 0, 10)),
      A::numeric("credit_amount"),
      A::nominal("savings_account_bonds", codes("A6", 1, 5)),
      A::nominal("present_employment_since", codes("A7", 1, 5)),
      A::numeric("installment_rate"),
      A::nominal("personal_status_and_sex", codes("A9", 1, 5)),
      A::nominal("other_debtors_guarantors", codes("A10", 1, 3)),
      A::numeric("present_residence_since"),
      A::nominal("property", codes("A12", 1, 4)),
      A::numeric("age_in_years"),
      A::nominal("other_installment_plans", codes("A14", 1, 3)),
      A::nominal("housing", codes("A15", 1, 3)),
      A::numeric("number_of_existing_credits"),
      A::nominal("job", codes("A17", 1, 4)),
      A::numeric("people_liable"),
      A::nominal("telephone", codes("A19", 1, 2)),
      A::nominal("foreign_worker", codes("A20", 1, 2)),
      A::nominal("class", {"good", "bad"}),
  };
  s.class_index = s.attributes.size() - 1;
  return s;
}

Dataset parse_german_credit(std::istream& source) {
  Dataset ds{"german_credit", german_credit_schema(), {}};
  const auto& attrs = ds.schema.attributes;
  const std::size_t n_attrs = attrs.size();

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(std::move(t));
    if (tokens.empty()) continue;
    if (tokens.size() != n_attrs) {
      throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(n_attrs) + " fields, got " +
                                        std::to_string(tokens.size()));
    }
    Instance row(n_attrs);
    for (std::size_t a = 0; a < n_attrs; ++a) {
      const auto& tok = tokens[a];
      if (a == ds.schema.class_index) {
        if (tok == "1") {
          row[a] = 0;
        } else if (tok == "2") {
          row[a] = 1;
        } else {
          throw Error(ErrorCode::parse, "line " + std::to_string(line_no) +
                                            ": unknown value '" + tok + "' for attribute '" +
                                            attrs[a].name + "'");
        }
      } else if (attrs[a].is_nominal()) {
        auto idx = attrs[a].index_of(tok);
        if (!idx) {
          throw Error(ErrorCode::parse, "line " + std::to_string(line_no) +
                                            ": unknown value '" + tok + "' for attribute '" +
                                            attrs[a].name + "'");
        }
        row[a] = static_cast<double>(*idx);
      } else {
        double v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || p != tok.data() + tok.size()) {
          throw Error(ErrorCode::parse, "line " + std::to_string(line_no) +
                                            ": non-numeric value '" + tok +
                                            "' for attribute '" + attrs[a].name + "'");
        }
        row[a] = v;
      }
    }
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

}  // namespace credrisk

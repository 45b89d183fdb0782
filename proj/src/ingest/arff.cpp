#include "credrisk/ingest/arff.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <iomanip>
#include <string>

#include "credrisk/error.hpp"

namespace credrisk {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t line_no;

  [[noreturn]] void fail(const std::string& what, ErrorCode code = ErrorCode::parse) const {
    throw Error(code, "ARFF line " + std::to_string(line_no) + ": " + what);
  }

  void skip_ws() {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
      text.remove_prefix(1);
    }
  }

  bool at_end() {
    skip_ws();
    return text.empty();
  }

  bool consume(char c) {
    skip_ws();
    if (!text.empty() && text.front() == c) {
      text.remove_prefix(1);
      return true;
    }
    return false;
  }

  // A bare or quoted token; bare tokens stop at whitespace, ',', '{', '}'.
  std::string token() {
    skip_ws();
    if (text.empty()) fail("unexpected end of line");
    char q = text.front();
    if (q == '\'' || q == '"') {
      text.remove_prefix(1);
      std::string out;
      while (!text.empty() && text.front() != q) {
        if (text.front() == '\\' && text.size() > 1) text.remove_prefix(1);
        out.push_back(text.front());
        text.remove_prefix(1);
      }
      if (text.empty()) fail("unterminated quote");
      text.remove_prefix(1);
      return out;
    }
    std::size_t n = 0;
    while (n < text.size() && !std::isspace(static_cast<unsigned char>(text[n])) &&
           text[n] != ',' && text[n] != '{' && text[n] != '}') {
      ++n;
    }
    if (n == 0) fail("expected a value");
    std::string out(text.substr(0, n));
    text.remove_prefix(n);
    return out;
  }
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Strips a trailing comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quote) {
      if (c == '\\') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == '%') {
      return line.substr(0, i);
    }
  }
  return line;
}

bool needs_quotes(std::string_view s) {
  if (s.empty()) return true;
  return std::any_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '{' || c == '}' ||
           c == '\'' || c == '"' || c == '%' || c == '\\';
  }) || s == "?";
}

std::string arff_quoted(std::string_view s) {
  if (!needs_quotes(s)) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

}  // namespace

Dataset parse_arff(std::istream& source) {
  Dataset ds;
  bool have_relation = false;
  bool in_data = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(source, raw)) {
    ++line_no;
    Cursor cur{strip_comment(raw), line_no};
    if (cur.at_end()) continue;

    if (!in_data) {
      if (cur.text.front() != '@') cur.fail("data row before @data");
      cur.text.remove_prefix(1);
      std::string keyword = lower(cur.token());
      if (keyword == "relation") {
        if (have_relation) cur.fail("duplicate @relation");
        ds.name = cur.token();
        have_relation = true;
      } else if (keyword == "attribute") {
        if (!have_relation) cur.fail("@attribute before @relation");
        std::string name = cur.token();
        if (ds.schema.find(name)) cur.fail("duplicate attribute '" + name + "'");
        if (cur.consume('{')) {
          std::vector<std::string> domain;
          if (!cur.consume('}')) {
            do {
              domain.push_back(cur.token());
            } while (cur.consume(','));
            if (!cur.consume('}')) cur.fail("expected '}' in nominal domain of '" + name + "'");
          }
          if (domain.empty()) cur.fail("empty nominal domain for '" + name + "'");
          try {
            ds.schema.attributes.push_back(AttributeSpec::nominal(name, std::move(domain)));
          } catch (const Error& e) {
            cur.fail(e.what());
          }
        } else {
          std::string kind = lower(cur.token());
          if (kind == "numeric" || kind == "real" || kind == "integer") {
            ds.schema.attributes.push_back(AttributeSpec::numeric(name));
          } else {
            cur.fail("unsupported ARFF feature: attribute type '" + kind + "' for '" + name + "'",
                     ErrorCode::unsupported);
          }
        }
        if (!cur.at_end()) cur.fail("trailing text after attribute '" + name + "'");
      } else if (keyword == "data") {
        if (!have_relation || ds.schema.attributes.empty()) {
          cur.fail("@data before header complete");
        }
        ds.schema.class_index = ds.schema.attributes.size() - 1;
        const auto& cls = ds.schema.class_attribute();
        if (!cls.is_nominal() || cls.domain.size() < 2) {
          cur.fail("class attribute '" + cls.name + "' must be nominal with >= 2 labels");
        }
        in_data = true;
      } else {
        cur.fail("unsupported ARFF feature: @" + keyword, ErrorCode::unsupported);
      }
      continue;
    }

    if (cur.text.front() == '{') {
      cur.fail("unsupported ARFF feature: sparse row", ErrorCode::unsupported);
    }
    const auto& attrs = ds.schema.attributes;
    Instance row;
    row.reserve(attrs.size());
    do {
      if (row.size() == attrs.size()) cur.fail("too many values in row");
      const auto& spec = attrs[row.size()];
      bool was_quoted = !cur.at_end() && (cur.text.front() == '\'' || cur.text.front() == '"');
      std::string value = cur.token();
      if (value == "?" && !was_quoted) {
        cur.fail("unsupported ARFF feature: missing value for '" + spec.name + "'",
                 ErrorCode::unsupported);
      }
      if (spec.is_nominal()) {
        auto idx = spec.index_of(value);
        if (!idx) cur.fail("value '" + value + "' not declared for attribute '" + spec.name + "'");
        row.push_back(static_cast<double>(*idx));
      } else {
        double v = 0;
        auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || p != value.data() + value.size()) {
          cur.fail("non-numeric value '" + value + "' for attribute '" + spec.name + "'");
        }
        row.push_back(v);
      }
    } while (cur.consume(','));
    if (!cur.at_end()) cur.fail("unexpected text in row");
    if (row.size() != attrs.size()) {
      cur.fail("expected " + std::to_string(attrs.size()) + " values, got " +
               std::to_string(row.size()));
    }
    ds.rows.push_back(std::move(row));
  }

  if (!in_data) {
    throw Error(ErrorCode::parse, "ARFF: missing @data section");
  }
  return ds;
}

void write_arff(std::ostream& out, const Dataset& ds) {
  const auto& attrs = ds.schema.attributes;
  if (attrs.empty() || ds.schema.class_index != attrs.size() - 1) {
    throw Error(ErrorCode::unsupported, "ARFF output requires the class as last attribute");
  }
  out << "@relation " << arff_quoted(ds.name.empty() ? "dataset" : ds.name) << "\n\n";
  for (const auto& a : attrs) {
    out << "@attribute " << arff_quoted(a.name) << ' ';
    if (a.is_nominal()) {
      out << '{';
      for (std::size_t i = 0; i < a.domain.size(); ++i) {
        if (i) out << ',';
        out << arff_quoted(a.domain[i]);
      }
      out << '}';
    } else {
      out << "numeric";
    }
    out << '\n';
  }
  out << "\n@data\n";
  for (const auto& row : ds.rows) {
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      if (i) out << ',';
      if (attrs[i].is_nominal()) {
        out << arff_quoted(attrs[i].domain.at(static_cast<std::size_t>(row[i])));
      } else {
        char buf[32];
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, row[i]);
        out.write(buf, p - buf);
      }
    }
    out << '\n';
  }
}

}  // namespace credrisk

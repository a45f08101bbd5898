#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qwalk::io {

// 17 significant digits round-trips any double exactly.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC-4180: quote fields containing separators, quotes, or line breaks;
// embedded quotes are doubled.
inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

using Cell = std::variant<std::string, double, long long>;

inline std::string cell_to_string(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<double>(c))
    return format_double(std::get<double>(c));
  return std::to_string(std::get<long long>(c));
}

// A rectangular table with named columns; serializable as CSV (RFC-4180,
// CRLF line endings) or as a JSON array of row objects with the same keys.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }

  void write_csv(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& fields) {
      for (size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(fields[i]);
      }
      os << "\r\n";
    };
    line(columns);
    for (const auto& row : rows) {
      std::vector<std::string> fields;
      fields.reserve(row.size());
      for (const auto& c : row) fields.push_back(cell_to_string(c));
      line(fields);
    }
  }

  void write_json(std::ostream& os) const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj;
      for (size_t i = 0; i < columns.size() && i < row.size(); ++i) {
        const Cell& c = row[i];
        if (std::holds_alternative<std::string>(c))
          obj[columns[i]] = std::get<std::string>(c);
        else if (std::holds_alternative<double>(c))
          obj[columns[i]] = std::get<double>(c);
        else
          obj[columns[i]] = std::get<long long>(c);
      }
      arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
  }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json")
      write_json(os);
    else
      write_csv(os);
  }
};

}  // namespace qwalk::io

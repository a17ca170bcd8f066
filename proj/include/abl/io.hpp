#pragma once

// Deterministic CSV/JSON emission. One row model feeds both formats so the
// numeric content is identical field-by-field; floats are rendered once, at
// 15 significant digits, and the string is reused verbatim in either format.

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "abl/rational.hpp"

namespace abl {

inline std::string format_sig15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool, Ratio>;

inline std::string cell_to_string(const Cell& c) {
  struct V {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const { return format_sig15(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(std::uint64_t u) const { return std::to_string(u); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const Ratio& q) const { return ratio_to_string(q); }
  };
  return std::visit(V{}, c);
}

inline std::string csv_escape(const std::string& s) {
  bool need_quotes = false;
  for (char c : s) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      need_quotes = true;
      break;
    }
  }
  if (!need_quotes) return s;
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

enum class OutputFormat { csv, json };

// Accumulates rows, then writes the whole table. JSON emits the same value
// strings as CSV (numbers unquoted, strings/rationals quoted).
class TableWriter {
 public:
  TableWriter(std::vector<std::string> columns, OutputFormat fmt)
      : columns_(std::move(columns)), fmt_(fmt) {}

  void add_row(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

  std::size_t row_count() const { return rows_.size(); }

  void write(std::ostream& os, const std::string& generated_comment = "") const {
    if (fmt_ == OutputFormat::csv) {
      if (!generated_comment.empty()) os << "# generated " << generated_comment << "\n";
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(columns_[i]);
      }
      os << '\n';
      for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) os << ',';
          os << csv_escape(cell_to_string(row[i]));
        }
        os << '\n';
      }
    } else {
      os << "{";
      if (!generated_comment.empty()) {
        os << "\"generated\":\"" << json_escape(generated_comment) << "\",";
      }
      os << "\"rows\":[";
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (r) os << ',';
        os << '{';
        for (std::size_t i = 0; i < rows_[r].size(); ++i) {
          if (i) os << ',';
          os << '"' << json_escape(columns_[i]) << "\":";
          const Cell& c = rows_[r][i];
          if (std::holds_alternative<std::string>(c) || std::holds_alternative<Ratio>(c)) {
            os << '"' << json_escape(cell_to_string(c)) << '"';
          } else if (std::holds_alternative<bool>(c)) {
            os << (std::get<bool>(c) ? "true" : "false");
          } else {
            os << cell_to_string(c);
          }
        }
        os << '}';
      }
      os << "]}\n";
    }
  }

 private:
  std::vector<std::string> columns_;
  OutputFormat fmt_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace abl

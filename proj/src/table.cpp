#include "aqed/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <stdexcept>

#include "aqed/errors.hpp"

namespace aqed::table {

int Table::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return int(i);
  return -1;
}

std::vector<double> Table::numeric_column(const std::string& name) const {
  const int c = column_index(name);
  if (c < 0) throw ContractError("table: no column '" + name + "'");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(parse_number(r.at(c)));
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

double parse_number(const std::string& s) {
  if (s == "nan") return NAN;
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw DomainError("table: not a number: '" + s + "'");
  return v;
}

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// One RFC 4180 record; returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& cells) {
  cells.clear();
  if (in.peek() == EOF) return false;
  std::string cell;
  bool quoted = false;
  for (;;) {
    const int c = in.get();
    if (c == EOF) {
      cells.push_back(cell);
      return true;
    }
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          cell += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        cell += char(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c == '\n') {
      cells.push_back(cell);
      return true;
    } else if (c != '\r') {
      cell += char(c);
    }
  }
}

}  // namespace

void write_csv(std::ostream& out, const Table& t) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << quote(cells[i]);
    out << '\n';
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
}

Table read_csv(std::istream& in) {
  Table t;
  if (!read_record(in, t.columns)) return t;
  std::vector<std::string> cells;
  while (read_record(in, cells)) {
    if (cells.size() == 1 && cells[0].empty()) continue;
    if (cells.size() != t.columns.size()) throw DomainError("table: ragged CSV row");
    t.rows.push_back(cells);
  }
  return t;
}

void write_json(std::ostream& out, const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json obj;
    for (size_t i = 0; i < t.columns.size(); ++i) {
      const std::string& cell = r[i];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (!cell.empty() && *end == '\0' && std::isfinite(v))
        obj[t.columns[i]] = v;
      else
        obj[t.columns[i]] = cell;  // text, or inf/nan kept as strings
    }
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

}  // namespace aqed::table

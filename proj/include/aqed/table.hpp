#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aqed::table {

// Rectangular table of text cells; numeric cells use the round-trip format below.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& name) const;  // -1 when absent
  std::vector<double> numeric_column(const std::string& name) const;
};

/// Shortest form that reloads to the identical double ("%.17g"; inf/nan spelled out).
std::string format_number(double v);
double parse_number(const std::string& s);

void write_csv(std::ostream& out, const Table& t);
Table read_csv(std::istream& in);

void write_json(std::ostream& out, const Table& t);

}  // namespace aqed::table

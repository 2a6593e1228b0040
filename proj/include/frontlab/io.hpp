#pragma once

#include <string>
#include <vector>

#include "frontlab/grid.hpp"

namespace frontlab {

/// Fixed %.12g formatting so that artifacts are byte-stable.
std::string format_number(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(const std::vector<double>& row);
  void add_text(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_table_csv(const std::string& path, const Table& t);
Table read_table_csv(const std::string& path);

/// Columns `x,y,value`, y outer, x inner.
void write_field_csv(const std::string& path, const Field& u);
Field read_field_csv(const std::string& path);

/// Columns `<axis>,value` unless other names are given.
void write_profile_csv(const std::string& path, const Profile& p, const std::string& axis = "y",
                       const std::string& value = "value");
Profile read_profile_csv(const std::string& path);

struct Series {
  std::string label;
  std::vector<double> x, y;
};

void write_line_svg(const std::string& path, const std::vector<Series>& series, const std::string& xlabel,
                    const std::string& ylabel);

/// Colour-mapped cells with level curves at 0.1, 0.5 and 0.9 of the maximum.
void write_heatmap_svg(const std::string& path, const Field& u, const std::string& title = "");

}  // namespace frontlab

#include "frontlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "frontlab/error.hpp"

namespace frontlab {

namespace {

std::ofstream open_out(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::configuration, "writable output", "cannot write " + path);
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

double parse_cell(const std::string& s, const std::string& path) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  fail(ErrorKind::configuration, "numeric cell", "bad number '" + s + "' in " + path);
}

UniformGrid grid_from(const std::vector<double>& v) {
  UniformGrid g;
  g.count = v.size();
  g.origin = v.empty() ? 0.0 : v.front();
  g.spacing = v.size() > 1 ? (v.back() - v.front()) / static_cast<double>(v.size() - 1) : 1.0;
  return g;
}

// Blue to yellow through green, loosely after viridis.
std::string colour(double t) {
  static const double stops[5][3] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  int k = std::min(3, static_cast<int>(t));
  double w = t - k;
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround((1 - w) * stops[k][c] + w * stops[k + 1][c]));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void Table::add(const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double v : row) cells.push_back(format_number(v));
  rows.push_back(std::move(cells));
}

void write_table_csv(const std::string& path, const Table& t) {
  std::ofstream out = open_out(path);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

Table read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::configuration, "readable input", "cannot read " + path);
  Table t;
  std::string line;
  if (std::getline(in, line)) t.header = split(line, ',');
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(split(line, ','));
  return t;
}

void write_field_csv(const std::string& path, const Field& u) {
  std::ofstream out = open_out(path);
  out << "x,y,value\n";
  for (std::size_t j = 0; j < u.ny(); ++j)
    for (std::size_t i = 0; i < u.nx(); ++i)
      out << format_number(u.x.at(i)) << ',' << format_number(u.y.at(j)) << ',' << format_number(u(i, j)) << '\n';
}

Field read_field_csv(const std::string& path) {
  Table t = read_table_csv(path);
  if (t.header != std::vector<std::string>{"x", "y", "value"})
    fail(ErrorKind::configuration, "field header", path + " is not an x,y,value field");
  std::vector<double> xs, ys, vals;
  for (const auto& r : t.rows) {
    if (r.size() != 3) fail(ErrorKind::configuration, "field row", "ragged row in " + path);
    double x = parse_cell(r[0], path), y = parse_cell(r[1], path);
    if (ys.empty() || y != ys.back()) ys.push_back(y);
    if (ys.size() == 1) xs.push_back(x);
    vals.push_back(parse_cell(r[2], path));
  }
  if (vals.size() != xs.size() * ys.size()) fail(ErrorKind::configuration, "field row", path + " is not a tensor grid");
  Field u(grid_from(xs), grid_from(ys));
  u.values = std::move(vals);
  return u;
}

void write_profile_csv(const std::string& path, const Profile& p, const std::string& axis, const std::string& value) {
  Table t;
  t.header = {axis, value};
  for (std::size_t i = 0; i < p.values.size(); ++i) t.add({p.grid.at(i), p.values[i]});
  write_table_csv(path, t);
}

Profile read_profile_csv(const std::string& path) {
  Table t = read_table_csv(path);
  if (t.header.size() < 2) fail(ErrorKind::configuration, "profile header", path + " needs two columns");
  std::vector<double> xs;
  Profile p;
  for (const auto& r : t.rows) {
    xs.push_back(parse_cell(r.at(0), path));
    p.values.push_back(parse_cell(r.at(1), path));
  }
  p.grid = grid_from(xs);
  return p;
}

void write_line_svg(const std::string& path, const std::vector<Series>& series, const std::string& xlabel,
                    const std::string& ylabel) {
  const double W = 640, H = 420, m = 60;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      x0 = std::min(x0, s.x[k]);
      x1 = std::max(x1, s.x[k]);
      y0 = std::min(y0, s.y[k]);
      y1 = std::max(y1, s.y[k]);
    }
  if (!(x1 > x0)) x1 = x0 + 1, x0 -= 1;
  if (!(y1 > y0)) y1 = y0 + 1, y0 -= 1;
  auto px = [&](double x) { return m + (x - x0) / (x1 - x0) * (W - 2 * m); };
  auto py = [&](double y) { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<rect x=\"" << m << "\" y=\"" << m << "\" width=\"" << W - 2 * m << "\" height=\"" << H - 2 * m
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel
      << "</text>\n";
  out << "<text x=\"15\" y=\"" << H / 2 << "\" font-size=\"13\" transform=\"rotate(-90 15 " << H / 2
      << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  for (double v : {x0, x1})
    out << "<text x=\"" << format_number(px(v)) << "\" y=\"" << H - m + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
        << format_number(v) << "</text>\n";
  for (double v : {y0, y1})
    out << "<text x=\"" << m - 6 << "\" y=\"" << format_number(py(v)) << "\" text-anchor=\"end\" font-size=\"11\">"
        << format_number(v) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* col = palette[s % 6];
    out << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < series[s].x.size(); ++k)
      if (std::isfinite(series[s].x[k]) && std::isfinite(series[s].y[k]))
        out << format_number(px(series[s].x[k])) << ',' << format_number(py(series[s].y[k])) << ' ';
    out << "\"/>\n";
    if (series[s].x.size() < 12)
      for (std::size_t k = 0; k < series[s].x.size(); ++k)
        if (std::isfinite(series[s].y[k]))
          out << "<circle cx=\"" << format_number(px(series[s].x[k])) << "\" cy=\"" << format_number(py(series[s].y[k]))
              << "\" r=\"3\" fill=\"" << col << "\"/>\n";
    out << "<text x=\"" << W - m - 4 << "\" y=\"" << m + 16 + 16 * s << "\" text-anchor=\"end\" font-size=\"12\" fill=\""
        << col << "\">" << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
}

void write_heatmap_svg(const std::string& path, const Field& u, const std::string& title) {
  const double W = 720, m = 40;
  std::size_t nx = u.nx(), ny = u.ny();
  // Coarsen so the file stays small; every cell is the mean of a block.
  std::size_t bx = std::max<std::size_t>(1, (nx + 239) / 240), by = std::max<std::size_t>(1, (ny + 159) / 160);
  std::size_t cx = (nx + bx - 1) / bx, cy = (ny + by - 1) / by;
  double xspan = u.x.back() - u.x.origin, yspan = u.y.back() - u.y.origin;
  if (!(xspan > 0)) xspan = 1;
  if (!(yspan > 0)) yspan = 1;
  double scale = (W - 2 * m) / xspan;
  double H = std::min(900.0, yspan * scale + 2 * m);
  double sy = (H - 2 * m) / yspan;
  double lo = u.min(), hi = u.max();
  double span = hi > lo ? hi - lo : 1.0;
  double cw = (W - 2 * m) / static_cast<double>(cx), ch = (H - 2 * m) / static_cast<double>(cy);

  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << format_number(H) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) out << "<text x=\"" << m << "\" y=\"25\" font-size=\"14\">" << title << "</text>\n";
  for (std::size_t J = 0; J < cy; ++J)
    for (std::size_t I = 0; I < cx; ++I) {
      double s = 0;
      int n = 0;
      for (std::size_t j = J * by; j < std::min(ny, (J + 1) * by); ++j)
        for (std::size_t i = I * bx; i < std::min(nx, (I + 1) * bx); ++i) s += u(i, j), ++n;
      double v = (s / n - lo) / span;
      out << "<rect x=\"" << format_number(m + I * cw) << "\" y=\"" << format_number(H - m - (J + 1) * ch)
          << "\" width=\"" << format_number(cw + 0.05) << "\" height=\"" << format_number(ch + 0.05) << "\" fill=\""
          << colour(v) << "\"/>\n";
    }
  // Marching squares segments on the full grid.
  auto X = [&](double x) { return m + (x - u.x.origin) * scale; };
  auto Y = [&](double y) { return H - m - (y - u.y.origin) * sy; };
  for (double frac : {0.1, 0.5, 0.9}) {
    double level = frac * hi;
    out << "<path fill=\"none\" stroke=\"white\" stroke-width=\"1\" d=\"";
    for (std::size_t j = 0; j + 1 < ny; ++j)
      for (std::size_t i = 0; i + 1 < nx; ++i) {
        double c[4] = {u(i, j), u(i + 1, j), u(i + 1, j + 1), u(i, j + 1)};
        double px[4] = {u.x.at(i), u.x.at(i + 1), u.x.at(i + 1), u.x.at(i)};
        double py[4] = {u.y.at(j), u.y.at(j), u.y.at(j + 1), u.y.at(j + 1)};
        double ex[4], ey[4];
        int n = 0;
        for (int e = 0; e < 4 && n < 4; ++e) {
          int f = (e + 1) % 4;
          if ((c[e] < level) != (c[f] < level)) {
            double w = (level - c[e]) / (c[f] - c[e]);
            ex[n] = px[e] + w * (px[f] - px[e]);
            ey[n] = py[e] + w * (py[f] - py[e]);
            ++n;
          }
        }
        for (int k = 0; k + 1 < n; k += 2)
          out << 'M' << format_number(X(ex[k])) << ' ' << format_number(Y(ey[k])) << 'L' << format_number(X(ex[k + 1]))
              << ' ' << format_number(Y(ey[k + 1]));
      }
    out << "\"/>\n";
  }
  out << "<text x=\"" << m << "\" y=\"" << format_number(H - 12) << "\" font-size=\"11\">x in [" << format_number(u.x.origin)
      << ", " << format_number(u.x.back()) << "], y in [" << format_number(u.y.origin) << ", "
      << format_number(u.y.back()) << "], value in [" << format_number(lo) << ", " << format_number(hi)
      << "]</text>\n";
  out << "</svg>\n";
}

}  // namespace frontlab

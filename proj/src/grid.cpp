#include "frontlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frontlab/error.hpp"

namespace frontlab {

Boundary Boundary::robin(double rho) {
  require(std::isfinite(rho) && rho >= 0.0, "boundary rho >= 0", "Robin parameter must be finite and nonnegative");
  return Boundary(Type::robin, rho);
}

std::string Boundary::describe() const {
  if (is_neumann()) return "neumann";
  if (is_dirichlet()) return "dirichlet";
  std::ostringstream os;
  os << "robin(rho=" << rho_ << ")";
  return os.str();
}

UniformGrid UniformGrid::spanning(double lo, double hi, double approx_spacing) {
  require(hi > lo && approx_spacing > 0.0, "grid extent", "grid needs hi > lo and positive spacing");
  auto cells = static_cast<std::size_t>(std::llround((hi - lo) / approx_spacing));
  cells = std::max<std::size_t>(cells, 1);
  return UniformGrid{lo, (hi - lo) / static_cast<double>(cells), cells + 1};
}

namespace {

double interpolate(const UniformGrid& g, std::span<const double> v, double p) {
  double s = g.locate(p);
  if (s <= 0.0) return v.front();
  double last = static_cast<double>(g.count - 1);
  if (s >= last) return v.back();
  auto i = static_cast<std::size_t>(s);
  double w = s - static_cast<double>(i);
  return (1.0 - w) * v[i] + w * v[i + 1];
}

}  // namespace

double Profile::operator()(double y) const { return interpolate(grid, values, y); }

double Profile::max() const { return *std::max_element(values.begin(), values.end()); }

Profile Profile::resampled(const UniformGrid& g) const {
  Profile out{g, std::vector<double>(g.count), boundary};
  for (std::size_t i = 0; i < g.count; ++i) out.values[i] = (*this)(g.at(i));
  return out;
}

Field::Field(UniformGrid gx, UniformGrid gy, double fill) : x(gx), y(gy), values(gx.count * gy.count, fill) {}

double Field::sample(double xp, double yp) const {
  double sx = std::clamp(x.locate(xp), 0.0, static_cast<double>(nx() - 1));
  double sy = std::clamp(y.locate(yp), 0.0, static_cast<double>(ny() - 1));
  auto i = std::min(static_cast<std::size_t>(sx), nx() - 2);
  auto j = std::min(static_cast<std::size_t>(sy), ny() - 2);
  double wx = sx - static_cast<double>(i);
  double wy = sy - static_cast<double>(j);
  const Field& f = *this;
  return (1 - wx) * (1 - wy) * f(i, j) + wx * (1 - wy) * f(i + 1, j) + (1 - wx) * wy * f(i, j + 1) +
         wx * wy * f(i + 1, j + 1);
}

std::vector<double> Field::column(std::size_t i) const {
  std::vector<double> c(ny());
  for (std::size_t j = 0; j < ny(); ++j) c[j] = (*this)(i, j);
  return c;
}

double Field::max() const { return *std::max_element(values.begin(), values.end()); }
double Field::min() const { return *std::min_element(values.begin(), values.end()); }

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "matching sizes", "max_abs_difference needs equal-length inputs");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace frontlab

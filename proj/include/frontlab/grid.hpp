#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace frontlab {

/// Wall condition at y = 0. Dirichlet is the Robin family at rho = 0;
/// Neumann is a sentinel kept for comparison and upper-bound runs only.
class Boundary {
 public:
  static Boundary dirichlet() { return Boundary(Type::robin, 0.0); }
  static Boundary robin(double rho);
  static Boundary neumann() { return Boundary(Type::neumann, 0.0); }

  bool is_dirichlet() const { return type_ == Type::robin && rho_ == 0.0; }
  bool is_robin() const { return type_ == Type::robin && rho_ > 0.0; }
  bool is_neumann() const { return type_ == Type::neumann; }

  /// Robin parameter; 0 for Dirichlet. Undefined for the Neumann sentinel.
  double rho() const { return rho_; }

  std::string describe() const;
  bool operator==(const Boundary&) const = default;

 private:
  enum class Type { robin, neumann };
  Boundary(Type t, double rho) : type_(t), rho_(rho) {}
  Type type_;
  double rho_;
};

/// Uniformly spaced nodes origin + i * spacing, i = 0 .. count-1.
struct UniformGrid {
  double origin = 0.0;
  double spacing = 1.0;
  std::size_t count = 0;

  static UniformGrid spanning(double lo, double hi, double approx_spacing);

  double at(std::size_t i) const { return origin + spacing * static_cast<double>(i); }
  double back() const { return at(count - 1); }
  /// Fractional index of coordinate v (may lie outside [0, count-1]).
  double locate(double v) const { return (v - origin) / spacing; }
};

/// A sampled function of one variable (steady states, waves, radial profiles).
struct Profile {
  UniformGrid grid;
  std::vector<double> values;
  std::optional<Boundary> boundary;

  /// Linear interpolation; clamps to the end values outside the grid.
  double operator()(double y) const;
  double max() const;
  double front() const { return values.front(); }
  double back() const { return values.back(); }
  /// Resample onto another grid by linear interpolation.
  Profile resampled(const UniformGrid& g) const;
};

/// Wall/top conditions recorded on a Field.
enum class TopCondition { dirichlet_value, robin };

/// A sampled function on a tensor grid, stored row-major with y as the
/// outer index: values[j * x.count + i] = u(x_i, y_j).
struct Field {
  UniformGrid x;
  UniformGrid y;
  std::vector<double> values;
  std::optional<Boundary> bottom;
  TopCondition top = TopCondition::dirichlet_value;
  double top_value = 0.0;

  Field() = default;
  Field(UniformGrid gx, UniformGrid gy, double fill = 0.0);

  std::size_t nx() const { return x.count; }
  std::size_t ny() const { return y.count; }
  double& operator()(std::size_t i, std::size_t j) { return values[j * x.count + i]; }
  double operator()(std::size_t i, std::size_t j) const { return values[j * x.count + i]; }

  /// Bilinear interpolation at a physical point (clamped to the grid).
  double sample(double xp, double yp) const;
  std::vector<double> column(std::size_t i) const;
  std::span<const double> row(std::size_t j) const {
    return std::span<const double>(values).subspan(j * x.count, x.count);
  }
  double max() const;
  double min() const;
};

/// Largest |a - b| over matching entries.
double max_abs_difference(std::span<const double> a, std::span<const double> b);

}  // namespace frontlab

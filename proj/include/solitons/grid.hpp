#pragma once

// Uniform 1-D grids, sampled functions and the finite-difference /
// quadrature calculus used by every other module.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace solitons {

class Grid {
 public:
  // n_points must be odd and at least 5 (composite Simpson needs an even
  // number of panels).
  Grid(double x_min, double x_max, std::size_t n_points);

  static Grid symmetric(double half_width, std::size_t n_points);
  // Symmetric grid on [-half_width, half_width] with spacing <= max_spacing.
  static Grid covering(double half_width, double max_spacing);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double spacing() const { return h_; }
  std::size_t size() const { return n_; }
  double x(std::size_t i) const { return i + 1 == n_ ? x_max_ : x_min_ + static_cast<double>(i) * h_; }
  std::vector<double> coordinates() const;

  // Index of the grid point nearest to x (clamped to the grid).
  std::size_t nearest_index(double x) const;

  bool operator==(const Grid& other) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  double h_;
};

class GridFunction {
 public:
  explicit GridFunction(const Grid& grid);
  // Throws numeric error if values has the wrong length or a non-finite entry.
  GridFunction(const Grid& grid, std::vector<double> values);

  template <class F>
  static GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  const std::vector<double>& data() const { return values_; }

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(double s);

 private:
  Grid grid_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);
GridFunction operator-(GridFunction a);

struct ComplexGridFunction {
  Grid grid;
  std::vector<std::complex<double>> values;

  GridFunction real() const;
  GridFunction imag() const;
};

// Values the function takes beyond the grid edges. Unset sides hold the
// edge value constant; set sides decay exponentially to the given value.
struct Asymptotes {
  std::optional<double> left;
  std::optional<double> right;

  static Asymptotes decaying() { return {0.0, 0.0}; }
};

// Centered finite-difference weights on integer offsets -r..r for the given
// derivative order and (even) accuracy order.
std::vector<double> centered_stencil(int order, int accuracy);
std::size_t stencil_half_width(int order, int accuracy);

// Weights for the derivative of the given order at x0 from arbitrary nodes.
std::vector<double> fd_weights(int order, std::span<const double> nodes, double x0);

GridFunction grid_derivative(const GridFunction& f, int order, int accuracy = 4,
                             const Asymptotes& asymptotes = {});

// Composite Simpson over [x_min, x_max].
double grid_integral(const GridFunction& f);

enum class IntegrateFrom { left, right };

// Running integral evaluated at every grid point with an 8-point
// (eighth-order) interpolatory rule per interval. `initial` is the value at
// the starting edge, e.g. an analytic tail beyond the grid.
GridFunction cumulative_integral(const GridFunction& f, IntegrateFrom from = IntegrateFrom::left,
                                 double initial = 0.0);

// max |f| over points [margin, n - margin).
double max_abs(const GridFunction& f, std::size_t margin = 0);
double max_abs(std::span<const double> values);

}  // namespace solitons

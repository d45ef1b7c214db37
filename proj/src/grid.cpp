#include "solitons/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "solitons/error.hpp"
#include "solitons/kernels.hpp"

namespace solitons {

Grid::Grid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points), h_(0.0) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw Error(ErrorCode::invalid_grid, "x_max must exceed x_min and both must be finite");
  }
  if (n_points < 5 || n_points % 2 == 0) {
    std::ostringstream msg;
    msg << "n_points must be odd and >= 5 (got " << n_points << ")";
    throw Error(ErrorCode::invalid_grid, msg.str());
  }
  h_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

Grid Grid::symmetric(double half_width, std::size_t n_points) {
  return Grid(-half_width, half_width, n_points);
}

Grid Grid::covering(double half_width, double max_spacing) {
  if (!(half_width > 0.0) || !(max_spacing > 0.0)) {
    throw Error(ErrorCode::invalid_grid, "half width and spacing must be positive");
  }
  auto half_panels = static_cast<std::size_t>(std::ceil(half_width / max_spacing - 1e-9));
  half_panels = std::max<std::size_t>(half_panels, 2);
  return Grid(-half_width, half_width, 2 * half_panels + 1);
}

std::vector<double> Grid::coordinates() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
  return xs;
}

std::size_t Grid::nearest_index(double xv) const {
  const double r = std::round((xv - x_min_) / h_);
  if (r <= 0.0) return 0;
  if (r >= static_cast<double>(n_ - 1)) return n_ - 1;
  return static_cast<std::size_t>(r);
}

GridFunction::GridFunction(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::numeric, "grid function length does not match grid");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "non-finite value at x=" << grid_.x(i);
      throw Error(ErrorCode::numeric, msg.str());
    }
  }
}

namespace {
void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw Error(ErrorCode::invalid_grid, "grid functions live on different grids");
}
}  // namespace

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }
GridFunction operator-(GridFunction a) { return a *= -1.0; }

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid());
  GridFunction out(a.grid());
  kernels::accumulate_weighted_product(out.values(), 1.0, a.values(), b.values());
  return out;
}

GridFunction ComplexGridFunction::real() const {
  std::vector<double> v(values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values[i].real();
  return GridFunction(grid, std::move(v));
}

GridFunction ComplexGridFunction::imag() const {
  std::vector<double> v(values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values[i].imag();
  return GridFunction(grid, std::move(v));
}

std::vector<double> fd_weights(int order, std::span<const double> nodes, double x0) {
  // Fornberg's recursion, carried out in extended precision.
  const int n = static_cast<int>(nodes.size());
  if (order < 0 || n <= order) throw Error(ErrorCode::invalid_grid, "too few nodes for derivative");
  std::vector<std::vector<long double>> c(n, std::vector<long double>(order + 1, 0.0L));
  long double c1 = 1.0L;
  long double c4 = static_cast<long double>(nodes[0]) - x0;
  c[0][0] = 1.0L;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    long double c2 = 1.0L;
    const long double c5 = c4;
    c4 = static_cast<long double>(nodes[i]) - x0;
    for (int j = 0; j < i; ++j) {
      const long double c3 = static_cast<long double>(nodes[i]) - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = static_cast<double>(c[i][order]);
  return w;
}

std::size_t stencil_half_width(int order, int accuracy) {
  if (order < 1 || accuracy < 2 || accuracy % 2 != 0) {
    throw Error(ErrorCode::invalid_grid, "derivative order >= 1 and even accuracy >= 2 required");
  }
  return static_cast<std::size_t>((order + 1) / 2 - 1 + accuracy / 2);
}

std::vector<double> centered_stencil(int order, int accuracy) {
  const auto r = static_cast<int>(stencil_half_width(order, accuracy));
  std::vector<double> nodes;
  for (int j = -r; j <= r; ++j) nodes.push_back(j);
  return fd_weights(order, nodes, 0.0);
}

namespace {

// Ghost values beyond one edge. `edge` is the outermost sample, `inner` its
// neighbour; ghosts[j] is j+1 spacings beyond the edge.
void fill_ghosts(double edge, double inner, std::optional<double> asymptote, std::span<double> ghosts) {
  if (!asymptote) {
    std::fill(ghosts.begin(), ghosts.end(), edge);
    return;
  }
  const double a = *asymptote;
  const double d0 = edge - a;
  const double d1 = inner - a;
  double rho = 0.0;
  if (d1 != 0.0) {
    rho = d0 / d1;
    if (!(rho >= 0.0 && rho < 1.0)) rho = 0.0;
  }
  double d = d0;
  for (double& g : ghosts) {
    d *= rho;
    g = a + d;
  }
}

}  // namespace

GridFunction grid_derivative(const GridFunction& f, int order, int accuracy,
                             const Asymptotes& asymptotes) {
  if (order < 1 || order > 4) throw Error(ErrorCode::invalid_grid, "derivative order must be 1..4");
  const std::size_t r = stencil_half_width(order, accuracy);
  const std::size_t n = f.size();
  if (n < 2 * r + 1) {
    std::ostringstream msg;
    msg << "stencil of width " << 2 * r + 1 << " is wider than the grid (" << n << " points)";
    throw Error(ErrorCode::invalid_grid, msg.str());
  }
  const auto coeffs = centered_stencil(order, accuracy);
  std::vector<double> padded(n + 2 * r);
  std::copy(f.values().begin(), f.values().end(), padded.begin() + static_cast<std::ptrdiff_t>(r));
  std::vector<double> left(r), right(r);
  fill_ghosts(f[0], f[1], asymptotes.left, left);
  fill_ghosts(f[n - 1], f[n - 2], asymptotes.right, right);
  for (std::size_t j = 0; j < r; ++j) {
    padded[r - 1 - j] = left[j];
    padded[r + n + j] = right[j];
  }
  GridFunction out(f.grid());
  const double scale = 1.0 / std::pow(f.grid().spacing(), order);
  kernels::difference_stencil(padded, coeffs, scale, out.values());
  return out;
}

double grid_integral(const GridFunction& f) {
  const std::size_t n = f.size();
  double s[4];
  kernels::lane_sums(f.values(), s);
  // Simpson weights 1,4,2,4,...,2,4,1: even lanes carry 2, odd lanes 4.
  const double weighted = 2.0 * (s[0] + s[2]) + 4.0 * (s[1] + s[3]) - f[0] - f[n - 1];
  return weighted * f.grid().spacing() / 3.0;
}

namespace {

// Weights w_j with integral_0^1 p(s) ds = sum_j w_j p(first + j) for every
// polynomial p of degree < count.
std::vector<double> interval_weights(int first, int count) {
  std::vector<double> w(count);
  for (int j = 0; j < count; ++j) {
    std::vector<long double> poly{1.0L};
    long double denom = 1.0L;
    for (int m = 0; m < count; ++m) {
      if (m == j) continue;
      const long double root = first + m;
      std::vector<long double> next(poly.size() + 1, 0.0L);
      for (std::size_t q = 0; q < poly.size(); ++q) {
        next[q + 1] += poly[q];
        next[q] -= root * poly[q];
      }
      poly = std::move(next);
      denom *= static_cast<long double>(j - m);
    }
    long double integral = 0.0L;
    for (std::size_t q = 0; q < poly.size(); ++q) integral += poly[q] / static_cast<long double>(q + 1);
    w[j] = static_cast<double>(integral / denom);
  }
  return w;
}

}  // namespace

GridFunction cumulative_integral(const GridFunction& f, IntegrateFrom from, double initial) {
  const std::size_t n = f.size();
  const std::size_t intervals = n - 1;
  const int p = static_cast<int>(std::min<std::size_t>(8, n));
  const int lead = p / 2 - 1;  // points left of the interval in a centered window
  const double h = f.grid().spacing();

  std::vector<double> piece(intervals);
  // Interior intervals share one centered window: a stencil over f.
  const auto centered = interval_weights(-lead, p);
  const std::size_t first_interior = static_cast<std::size_t>(lead);
  const std::size_t last_interior = n - static_cast<std::size_t>(p - lead);  // inclusive
  if (last_interior >= first_interior) {
    const std::size_t count = last_interior - first_interior + 1;
    kernels::stencil(f.values(), centered, h, std::span<double>(piece).subspan(first_interior, count));
  }
  for (std::size_t i = 0; i < intervals; ++i) {
    if (i >= first_interior && i <= last_interior && last_interior >= first_interior) continue;
    const long start = std::clamp<long>(static_cast<long>(i) - lead, 0, static_cast<long>(n) - p);
    const auto w = interval_weights(static_cast<int>(start - static_cast<long>(i)), p);
    double acc = 0.0;
    for (int j = 0; j < p; ++j) acc = acc + w[j] * f[static_cast<std::size_t>(start + j)];
    piece[i] = acc * h;
  }

  GridFunction out(f.grid());
  if (from == IntegrateFrom::left) {
    out[0] = initial;
    for (std::size_t i = 0; i < intervals; ++i) out[i + 1] = out[i] + piece[i];
  } else {
    out[n - 1] = initial;
    for (std::size_t i = intervals; i-- > 0;) out[i] = out[i + 1] + piece[i];
  }
  return out;
}

double max_abs(std::span<const double> values) { return kernels::max_abs(values); }

double max_abs(const GridFunction& f, std::size_t margin) {
  if (2 * margin >= f.size()) return 0.0;
  return kernels::max_abs(f.values().subspan(margin, f.size() - 2 * margin));
}

}  // namespace solitons

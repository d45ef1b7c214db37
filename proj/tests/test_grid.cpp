#include <cmath>

#include "doctest.h"
#include "solitons/error.hpp"
#include "solitons/grid.hpp"
#include "support.hpp"

using namespace solitons;
using testing::sech;

TEST_SUITE("grid") {
  TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid(-1.0, 1.0, 4), Error);
    CHECK_THROWS_AS(Grid(-1.0, 1.0, 3), Error);
    CHECK_THROWS_AS(Grid(1.0, -1.0, 5), Error);
    const Grid g(-1.0, 1.0, 5);
    CHECK(g.spacing() == doctest::Approx(0.5));
    CHECK(g.x(4) == 1.0);
    CHECK(g.nearest_index(0.26) == 3);
  }

  TEST_CASE("covering grid is symmetric with spacing at most the request") {
    const Grid g = Grid::covering(12.0, 0.01);
    CHECK(g.x_min() == -12.0);
    CHECK(g.x_max() == 12.0);
    CHECK(g.size() % 2 == 1);
    CHECK(g.spacing() <= 0.01 + 1e-15);
  }

  TEST_CASE("grid functions reject non-finite values") {
    const Grid g(-1.0, 1.0, 5);
    CHECK_THROWS_AS(GridFunction(g, {0, 1, NAN, 0, 0}), Error);
    CHECK_THROWS_AS(GridFunction(g, {0, 1, 0}), Error);
  }

  TEST_CASE("first derivative of x^2 is exact on the interior") {
    const Grid g(-1.0, 1.0, 201);
    const auto f = GridFunction::sample(g, [](double x) { return x * x; });
    const auto d = grid_derivative(f, 1);
    const std::size_t r = stencil_half_width(1, 4);
    for (std::size_t i = r; i + r < g.size(); ++i) CHECK(std::fabs(d[i] - 2.0 * g.x(i)) < 1e-10);
  }

  TEST_CASE("sech^2 derivatives at the origin") {
    const Grid g = Grid::covering(20.0, 0.01);
    const auto f = GridFunction::sample(g, [](double x) { return sech(x) * sech(x); });
    const std::size_t mid = g.size() / 2;
    CHECK(std::fabs(grid_derivative(f, 1, 4, Asymptotes::decaying())[mid]) < 1e-12);
    CHECK(grid_derivative(f, 2, 4, Asymptotes::decaying())[mid] == doctest::Approx(-2.0).epsilon(1e-7));
    CHECK(grid_derivative(f, 4, 8, Asymptotes::decaying())[mid] == doctest::Approx(16.0).epsilon(1e-6));
  }

  TEST_CASE("constants differentiate to exactly zero") {
    const Grid g(-3.0, 3.0, 61);
    const auto c = GridFunction::sample(g, [](double) { return -0.7312; });
    for (int order = 1; order <= 4; ++order) {
      for (int acc : {2, 4, 8}) CHECK(max_abs(grid_derivative(c, order, acc)) == 0.0);
    }
  }

  TEST_CASE("derivative order and width are validated") {
    const Grid g(-1.0, 1.0, 5);
    const GridFunction f(g);
    CHECK_THROWS_AS(grid_derivative(f, 5), Error);
    CHECK_THROWS_AS(grid_derivative(f, 0), Error);
    try {
      grid_derivative(f, 4, 8);
      FAIL("expected invalid grid");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_grid);
    }
  }

  TEST_CASE("decaying asymptote removes edge error") {
    const Grid g = Grid::covering(10.0, 0.01);
    const auto f = GridFunction::sample(g, [](double x) { return std::tanh(x) - 1.0; });
    const auto d = grid_derivative(f, 1, 4, Asymptotes{-2.0, 0.0});
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      worst = std::max(worst, std::fabs(d[i] - sech(g.x(i)) * sech(g.x(i))));
    }
    CHECK(worst < 1e-7);
  }

  TEST_CASE("centered weights match the textbook five-point rule") {
    const auto w = centered_stencil(1, 4);
    REQUIRE(w.size() == 5);
    CHECK(w[0] == doctest::Approx(1.0 / 12.0));
    CHECK(w[1] == doctest::Approx(-8.0 / 12.0));
    CHECK(w[2] == doctest::Approx(0.0));
    CHECK(w[3] == doctest::Approx(8.0 / 12.0));
    CHECK(w[4] == doctest::Approx(-1.0 / 12.0));
    const std::vector<double> nodes = {-1.0, 0.0, 1.0};
    const auto w2 = fd_weights(2, nodes, 0.0);
    CHECK(w2[0] == doctest::Approx(1.0));
    CHECK(w2[1] == doctest::Approx(-2.0));
    CHECK(w2[2] == doctest::Approx(1.0));
  }

  TEST_CASE("Simpson integrals") {
    const Grid g = Grid::covering(20.0, 0.01);
    CHECK(grid_integral(GridFunction(g)) == 0.0);
    const auto f = GridFunction::sample(g, [](double x) { return sech(x) * sech(x); });
    CHECK(std::fabs(grid_integral(f) - 2.0) < 1e-8);
    const Grid p(0.0, 1.0, 5);
    CHECK(grid_integral(GridFunction::sample(p, [](double x) { return x * x * x; })) == doctest::Approx(0.25));
  }

  TEST_CASE("cumulative integral from either side") {
    const Grid g = Grid::covering(15.0, 0.01);
    const auto f = GridFunction::sample(g, [](double x) { return sech(x) * sech(x); });
    const auto left = cumulative_integral(f, IntegrateFrom::left, 0.0);
    const auto right = cumulative_integral(f, IntegrateFrom::right, 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.x(i);
      worst = std::max(worst, std::fabs(left[i] - (std::tanh(x) - std::tanh(-15.0))));
      worst = std::max(worst, std::fabs(right[i] - (std::tanh(15.0) - std::tanh(x))));
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("max_abs honours the margin") {
    const Grid g(-1.0, 1.0, 5);
    const GridFunction f(g, {9, 0, 1, 0, -9});
    CHECK(max_abs(f) == 9.0);
    CHECK(max_abs(f, 1) == 1.0);
  }
}

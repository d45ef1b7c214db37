#include <cmath>
#include <numbers>

#include "doctest.h"
#include "solitons/error.hpp"
#include "solitons/oracle.hpp"
#include "support.hpp"

using namespace solitons;
using testing::sech;

namespace {

GridFunction sech2(const Grid& g, double depth) {
  return GridFunction::sample(g, [&](double x) { return -depth * sech(x) * sech(x); });
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("harmonic oscillator") {
    const Grid g(-10.0, 10.0, 4001);
    const auto u = GridFunction::sample(g, [](double x) { return x * x; });
    DiscreteHamiltonian h(u);
    CHECK(h.dimension() == 3999);
    for (std::size_t k = 0; k < 4; ++k) CHECK(h.eigenvalue(k) == doctest::Approx(2.0 * k + 1.0).epsilon(1e-5));
    CHECK(h.count_below(4.0) == 2);
    CHECK_THROWS_AS(h.eigenvalue(4000), Error);
  }

  TEST_CASE("one-soliton well has one level at -1") {
    const auto e = schrodinger_spectrum(sech2(Grid(-30.0, 30.0, 6001), 2.0), 1, {.richardson = true});
    CHECK(e.bound_count == 1);
    CHECK(e.energies[0] == doctest::Approx(-1.0).epsilon(1e-7));
  }

  TEST_CASE("two-soliton well") {
    const auto u = sech2(Grid(-30.0, 30.0, 6001), 6.0);
    const auto plain = schrodinger_spectrum(u, 2);
    const auto rich = schrodinger_spectrum(u, 2, {.richardson = true});
    CHECK(plain.bound_count == 2);
    CHECK(rich.energies[0] == doctest::Approx(-4.0).epsilon(1e-7));
    CHECK(rich.energies[1] == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(std::fabs(rich.energies[0] + 4.0) < std::fabs(plain.energies[0] + 4.0));
  }

  TEST_CASE("second-order convergence") {
    const double coarse = std::fabs(schrodinger_spectrum(sech2(Grid(-20.0, 20.0, 2001), 6.0), 1).energies[0] + 4.0);
    const double fine = std::fabs(schrodinger_spectrum(sech2(Grid(-20.0, 20.0, 4001), 6.0), 1).energies[0] + 4.0);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.02));
  }

  TEST_CASE("requesting more levels than exist") {
    const auto e = schrodinger_spectrum(sech2(Grid(-20.0, 20.0, 2001), 2.0), 3);
    CHECK(e.bound_count == 1);
    CHECK(e.requested == 3);
    CHECK(e.energies.size() == 3);
    CHECK(e.energies[1] > 0.0);
  }

  TEST_CASE("free propagation") {
    const Grid g(-10.0, 10.0, 2001);
    const auto r = reflection_coefficient(GridFunction(g), 1.0);
    CHECK(std::abs(r.R) < 1e-10);
    CHECK(std::abs(r.T) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.flux_error() < 1e-10);
  }

  TEST_CASE("non-integer sech^2 well reflects by sech(pi k)") {
    // depth nu (nu + 1) with nu = 3/2
    const auto u = sech2(Grid(-32.0, 32.0, 12801), 3.75);
    for (double k : {0.25, 0.5, 1.0}) {
      CAPTURE(k);
      const auto r = reflection_coefficient(u, k);
      CHECK(std::abs(r.R) == doctest::Approx(sech(std::numbers::pi * k)).epsilon(1e-5));
      CHECK(r.flux_error() < 1e-8);
    }
  }

  TEST_CASE("integer sech^2 wells are reflectionless") {
    for (double depth : {2.0, 6.0, 12.0}) {
      const auto r = reflection_coefficient(sech2(Grid(-32.0, 32.0, 12801), depth), 0.7);
      CHECK(std::abs(r.R) < 1e-6);
      CHECK(std::abs(r.T) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }

  TEST_CASE("square well reflects") {
    const Grid g(-10.0, 10.0, 20001);
    const auto u = GridFunction::sample(g, [](double x) { return std::fabs(x) < 1.0 ? -1.0 : 0.0; });
    const auto r = reflection_coefficient(u, 0.5);
    CHECK(std::abs(r.R) > 0.05);
    CHECK(r.flux_error() < 1e-8);
  }

  TEST_CASE("domain checks") {
    const Grid g(-10.0, 10.0, 201);
    CHECK_THROWS_AS(reflection_coefficient(GridFunction(g), 2.0), Error);   // k h = 0.2
    CHECK_THROWS_AS(reflection_coefficient(GridFunction(g), -1.0), Error);
    CHECK_THROWS_AS(reflection_coefficient(sech2(g, 2.0), 0.5), Error);  // edge not negligible
  }
}

#include <cmath>
#include <complex>

#include "doctest.h"
#include "solitons/error.hpp"
#include "solitons/identities.hpp"
#include "solitons/spectrum.hpp"
#include "solitons/state.hpp"
#include "support.hpp"

using namespace solitons;
using testing::sech;
using testing::state_at;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::io;
}

}  // namespace

TEST_SUITE("state") {
  TEST_CASE("symmetric norm constants") {
    const auto c1 = symmetric_norm_constants(std::vector<double>{1.0});
    CHECK(c1[0] * c1[0] == doctest::Approx(2.0));
    const auto c2 = symmetric_norm_constants(std::vector<double>{1.0, 2.0});
    CHECK(c2[0] * c2[0] == doctest::Approx(6.0));
    CHECK(c2[1] * c2[1] == doctest::Approx(12.0));
    const auto c3 = symmetric_norm_constants(std::vector<double>{1.0, 2.0, 3.0});
    CHECK(c3[0] * c3[0] == doctest::Approx(12.0));
    CHECK(c3[1] * c3[1] == doctest::Approx(60.0));
    CHECK(c3[2] * c3[2] == doctest::Approx(60.0));
  }

  TEST_CASE("spectrum validation") {
    CHECK(code_of([] { Spectrum::symmetric({1.0, 1.0}); }) == ErrorCode::degenerate_spectrum);
    CHECK(code_of([] { Spectrum::symmetric({2.0, 1.0}); }) == ErrorCode::invalid_spectrum);
    CHECK(code_of([] { Spectrum::symmetric({-1.0}); }) == ErrorCode::invalid_spectrum);
    CHECK(code_of([] { Spectrum::with_constants({1.0}, {0.0}); }) == ErrorCode::invalid_spectrum);
    CHECK(code_of([] { Spectrum::with_constants({1.0, 2.0}, {1.0}); }) == ErrorCode::invalid_spectrum);
    const auto sp = Spectrum::symmetric({0.5, 2.0});
    CHECK(sp.energy(1) == -4.0);
    CHECK(sp.gamma_min() == 0.5);
    CHECK(sp.gamma_max() == 2.0);
  }

  TEST_CASE("one soliton at the origin") {
    const auto s = state_at({1.0});
    const std::size_t mid = s.grid.size() / 2;
    REQUIRE(s.grid.x(mid) == doctest::Approx(0.0));
    CHECK(s.U[mid] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(s.psis[0][mid] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(s.W[mid] == doctest::Approx(-1.0).epsilon(1e-12));
    double worst = 0.0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      const double x = s.grid.x(i);
      worst = std::max(worst, std::fabs(s.U[i] + 2.0 * sech(x) * sech(x)));
      worst = std::max(worst, std::fabs(s.W[i] - (std::tanh(x) - 1.0)));
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("two solitons: depth and right-edge limits") {
    const auto s = state_at({1.0, 2.0});
    const std::size_t mid = s.grid.size() / 2;
    CHECK(s.U[mid] == doctest::Approx(-6.0).epsilon(1e-12));
    const std::size_t last = s.grid.size() - 1;
    const SquareMatrix a = s.matrix_A(last);
    CHECK(std::fabs(a(0, 0) - 1.0) < 1e-9);
    CHECK(std::fabs(a(0, 1)) < 1e-9);
    CHECK(std::fabs(s.psis[1][last]) < 1e-9);
    CHECK(std::fabs(s.lambda(1)[last]) < 1e-9);
  }

  TEST_CASE("stabilised solve covers very wide grids") {
    const auto sp = Spectrum::symmetric({1.0, 2.0, 3.0});
    const std::vector<double> alphas(3, 0.0);
    const auto s = build_state(sp, alphas, 0.0, Grid::covering(300.0, 0.05));
    CHECK(linear_system_residual(s) < 1e-12);
    CHECK(std::fabs(s.W[0] + 12.0) < 1e-9);
    // lambda_3 = C e^{900} is not representable on its own.
    CHECK(code_of([&] { s.lambda(2); }) == ErrorCode::range);
    CHECK(std::isfinite(s.log_det_A[0]));
  }

  TEST_CASE("rates and grid must match the spectrum") {
    const auto sp = Spectrum::symmetric({1.0, 2.0});
    const std::vector<double> one(1, 0.0);
    CHECK_THROWS_AS(build_state(sp, one, 0.0, Grid::covering(10.0, 0.01)), Error);
  }

  TEST_CASE("default grid sizing") {
    const auto sp = Spectrum::symmetric({0.5, 2.0});
    const std::vector<double> alphas = {0.5, 32.0};
    const Grid g = default_grid(sp, alphas, 0.5);
    CHECK(g.x_max() == doctest::Approx(12.0 / 0.5 + 16.0 * 0.5));
    CHECK(g.spacing() <= 0.05 / 2.0 + 1e-15);
  }

  TEST_CASE("zero-energy state") {
    const auto s1 = state_at({1.0});
    CHECK(std::fabs(s1.xi[s1.grid.size() / 2]) < 1e-12);
    CHECK(std::fabs(s1.xi[s1.grid.size() - 1] - 1.0) < 1e-9);
    const auto s2 = state_at({1.0, 2.0});
    CHECK(std::fabs(s2.xi[0] - 1.0) < 1e-9);
    CHECK(std::fabs(s2.xi[s2.grid.size() - 1] - 1.0) < 1e-9);
    const GridFunction xi = zero_energy_xi(s2);
    CHECK(max_abs(xi - s2.xi) == 0.0);
  }

  TEST_CASE("scattering states") {
    const auto s = state_at({1.0});
    SUBCASE("k = 0 is the zero-energy state") {
      const auto z = scattering_state(s, 0.0, WaveSign::plus);
      CHECK(max_abs(z.real() - s.xi) < 1e-15);
      CHECK(max_abs(z.imag()) < 1e-15);
    }
    SUBCASE("solves the Schroedinger equation at k^2") {
      for (WaveSign sign : {WaveSign::plus, WaveSign::minus}) {
        CHECK(schrodinger_residual(scattering_state(s, 1.0, sign), s.U, 1.0) < 1e-6);
      }
      const auto s3 = state_at({1.0, 2.0, 3.0});
      CHECK(schrodinger_residual(scattering_state(s3, 0.7, WaveSign::plus), s3.U, 0.49) < 1e-6);
    }
    SUBCASE("plane wave at the right edge") {
      const auto p = scattering_state(s, 1.0, WaveSign::plus);
      const std::size_t last = s.grid.size() - 1;
      const std::complex<double> expected = std::exp(std::complex<double>(0.0, s.grid.x(last)));
      CHECK(std::abs(p.values[last] - expected) < 1e-8);
    }
  }

  TEST_CASE("overlap inverse") {
    SUBCASE("one soliton accumulates to unit norm") {
      const auto s = state_at({1.0});
      const OverlapInverse b = overlap_inverse_B(s);
      CHECK(std::fabs(b(s.grid.size() - 1, 0, 0) - 1.0) < 1e-6);
    }
    SUBCASE("two solitons") {
      const auto s = state_at({1.0, 2.0});
      const OverlapInverse b = overlap_inverse_B(s);
      CHECK(b.inverse_residual < 1e-8);
      CHECK(b.inverse_residual_unbalanced < 1e-4);
      CHECK(b.wronskian_residual < 1e-8);
    }
  }

  TEST_CASE("symmetric at t = 0") {
    for (auto g : {std::vector<double>{1.0}, {1.0, 2.0}, {0.5, 1.0, 2.0}, {1.0, 2.0, 3.0}}) {
      CHECK(symmetry_error(state_at(g).U) < 1e-8);
    }
  }

  TEST_CASE("empty spectrum gives the free problem") {
    const auto s = state_at({});
    CHECK(max_abs(s.U) == 0.0);
    CHECK(max_abs(s.W) == 0.0);
    CHECK(max_abs(s.xi - GridFunction(s.grid, std::vector<double>(s.grid.size(), 1.0))) == 0.0);
  }
}

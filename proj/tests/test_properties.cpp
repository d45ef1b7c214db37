// Randomised invariants. Each case draws spectra and rates from a fixed seed so
// failures reproduce; CAPTURE prints the draw.
#include <cmath>

#include "doctest.h"
#include "solitons/evolution.hpp"
#include "solitons/hierarchy.hpp"
#include "solitons/identities.hpp"
#include "solitons/io.hpp"
#include "solitons/oracle.hpp"
#include "solitons/state.hpp"
#include "support.hpp"

using namespace solitons;

namespace {

constexpr int kDraws = 12;

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("pointwise identities hold for random spectra and times") {
    testing::SpectrumGen gen(101);
    for (int d = 0; d < kDraws; ++d) {
      const auto g = gen.gammas();
      const auto a = gen.uniforms(g.size(), -2.0, 2.0);
      const double t = gen.uniform(-3.0, 3.0);
      const auto g_str = testing::show(g);
      CAPTURE(g_str);
      const auto a_str = testing::show(a);
      CAPTURE(a_str);
      CAPTURE(t);
      const auto s = testing::state_at(g, t, a);
      CHECK(identity_chain(s).max() < 1e-7);
      CHECK(xi_identity_residual(s) < 1e-9);
      CHECK(normalization_error(s) < 1e-6);
      CHECK(eigen_equation_residual(s) < 1e-5);
      const auto e = edge_asymptotics(s);
      CHECK(e.w_left < 1e-6);
      CHECK(e.w_right < 1e-6);
      CHECK(e.xi_left < 1e-6);
      const auto r = potential_representations(s);
      CHECK(r.from_superpotential < 1e-6);
    }
  }

  TEST_CASE("potential is a well and symmetric at t = 0") {
    testing::SpectrumGen gen(202);
    for (int d = 0; d < kDraws; ++d) {
      const auto g = gen.gammas();
      const auto g_str = testing::show(g);
      CAPTURE(g_str);
      const auto s = testing::state_at(g);
      double top = -INFINITY;
      for (double u : s.U.values()) top = std::max(top, u);
      CHECK(top <= 0.0);
      CHECK(symmetry_error(s.U) < 1e-8);
    }
  }

  TEST_CASE("sumrules and the bound-state count do not depend on time") {
    testing::SpectrumGen gen(303);
    for (int d = 0; d < 6; ++d) {
      const auto g = gen.gammas(3);
      const auto a = gen.uniforms(g.size(), -3.0, 3.0);
      const double t = gen.uniform(-2.0, 2.0);
      const auto g_str = testing::show(g);
      CAPTURE(g_str);
      const auto a_str = testing::show(a);
      CAPTURE(a_str);
      CAPTURE(t);
      const auto s = testing::state_at(g, t, a);
      for (int j = 0; j <= 2; ++j) CHECK(sumrule(s, j).rel_error < 1e-6);
      const auto e = schrodinger_spectrum(s.U, g.size(), {.richardson = true});
      CHECK(e.bound_count == g.size());
      for (std::size_t k = 0; k < g.size(); ++k) {
        const double exact = -g[g.size() - 1 - k] * g[g.size() - 1 - k];
        CHECK(std::fabs(e.energies[k] - exact) < 1e-4 * std::fabs(exact));
      }
    }
  }

  TEST_CASE("constructed potentials do not reflect") {
    testing::SpectrumGen gen(404);
    for (int d = 0; d < 6; ++d) {
      const auto g = gen.gammas(3, 0.6, 2.0);
      const double k = gen.uniform(0.3, 2.0);
      const auto g_str = testing::show(g);
      CAPTURE(g_str);
      CAPTURE(k);
      const auto sp = Spectrum::symmetric(g);
      const std::vector<double> zero(g.size(), 0.0);
      const auto s = build_state(sp, zero, 0.0, Grid::covering(20.0 / sp.gamma_min(), 0.005));
      const auto r = reflection_coefficient(s.U, k);
      CHECK(std::abs(r.R) < 1e-6);
      CHECK(r.flux_error() < 1e-6);
    }
  }

  TEST_CASE("general evolution residual for random rates") {
    testing::SpectrumGen gen(505);
    for (int d = 0; d < 4; ++d) {
      const auto g = gen.gammas(3);
      const auto a = gen.uniforms(g.size(), -2.0, 2.0);
      const double t0 = gen.uniform(-1.0, 1.0);
      const auto g_str = testing::show(g);
      CAPTURE(g_str);
      const auto a_str = testing::show(a);
      CAPTURE(a_str);
      CAPTURE(t0);
      auto spec = EvolutionSpec::custom(a, stencil_times(t0, default_time_step(a)));
      const auto frames = evolve(Spectrum::symmetric(g), spec);
      CHECK(potential_evolution_residual(frames).general < 1e-4);
      CHECK(superpotential_evolution_residual(frames) < 1e-4);
    }
  }

  TEST_CASE("weighted recursion for random weights") {
    testing::SpectrumGen gen(606);
    for (int d = 0; d < 4; ++d) {
      const auto g = gen.gammas(3);
      const auto b = gen.uniforms(g.size(), -2.0, 2.0);
      const auto g_str = testing::show(g);
      CAPTURE(g_str);
      const auto b_str = testing::show(b);
      CAPTURE(b_str);
      const auto s = testing::state_at(g);
      const auto q0 = weighted_Q(s, b, 0);
      const auto q1 = weighted_Q(s, b, 1);
      const double scale = std::max(1.0, max_abs(q1.values));
      CHECK(recursion_residual(s.U, q0.values, q1.values, RecursionDirection::lax) / scale < 1e-4);
    }
  }

  TEST_CASE("frames round-trip through both formats") {
    testing::SpectrumGen gen(707);
    for (int d = 0; d < 4; ++d) {
      const auto g = gen.gammas();
      const auto g_str = testing::show(g);
      CAPTURE(g_str);
      const auto f = frame_from_state(testing::state_at(g, gen.uniform(-1.0, 1.0), gen.uniforms(g.size(), -1, 1)));
      const auto c = parse_csv(to_csv(f));
      const auto j = parse_json(to_json(f));
      for (std::size_t i = 0; i < f.columns.size(); ++i) {
        CHECK(c.columns[i].values == f.columns[i].values);
        CHECK(j.columns[i].values == f.columns[i].values);
      }
    }
  }
}

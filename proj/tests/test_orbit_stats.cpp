#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lvthermo/orbit_stats.hpp"

using namespace lvthermo;

namespace {

// Frozen from tests/oracle/area_oracle.py (Lambert-W chord quadrature in
// (ln x, ln y), 40 digits; tau and F_alpha by differentiating the area).
struct OracleRow {
  double h, alpha, area, tau, theta, f_alpha;
};
constexpr OracleRow kOracle[] = {
    {2.01, 1.0, 0.062884227481235766, 6.2936616410026089, 0.009991675922256606, -1.005},
    {2.61, 1.0, 4.0306987705969988, 6.9370489858303245, 0.58103939857281368, -1.305},
    {5.01, 4.0, 0.031432291834892791, 3.1448659967699241, 0.0099947952844975711,
     -1.0012496096464999},
    {2.61, 0.5, 11.282240646133513, 11.476914330712361, 0.98303780276045992, -2.1507474038166308},
    {3.5, 2.0, 2.2915518873452215, 4.7246392779994288, 0.48502155455887875, -1.1237543664589056},
    {2.1, 1.0, 0.6335689371860817, 6.3883363622654095, 0.099175888879058288, -1.05},
};

}  // namespace

TEST_CASE("time_average examples") {
  const auto orbit = orbit_from_energy(2.61, ModelParams(0.8));
  CHECK(time_average(orbit, [](PhaseState) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(time_average(orbit, [](PhaseState s) { return s.x; }) - 1.0) < 1e-6);
  CHECK(std::abs(time_average(orbit, [](PhaseState s) { return s.y; }) - 1.0) < 1e-6);
}

TEST_CASE("summarize matches the independent area oracle") {
  for (const auto& row : kOracle) {
    CAPTURE(row.h);
    CAPTURE(row.alpha);
    const auto s = summarize(orbit_from_energy(row.h, ModelParams(row.alpha)));
    CHECK(s.tau == doctest::Approx(row.tau).epsilon(1e-8));
    CHECK(s.area_invariant == doctest::Approx(row.area).epsilon(1e-8));
    CHECK(s.theta() == doctest::Approx(row.theta).epsilon(1e-8));
    CHECK(s.f_alpha == doctest::Approx(row.f_alpha).epsilon(1e-8));
  }
}

TEST_CASE("summarize: small-oscillation examples") {
  const auto s = summarize(orbit_from_energy(2.01, ModelParams(1.0)));
  CHECK(std::abs(s.theta() - 0.01) < 1e-4);
  CHECK(std::abs(s.f_alpha + 1.005) < 1e-3);
}

TEST_CASE("summarize: variance ratio is 1 at alpha = 1 on H = 2.61") {
  const auto s = summarize(orbit_from_energy(2.61, ModelParams(1.0)));
  CHECK(s.var_y / s.var_x == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("variance ratio follows the linearization, not alpha^2") {
  // Linearized flow p' = -q, q' = alpha p: q has sqrt(alpha) times the
  // amplitude of p, so <q^2>/<p^2> -> alpha near the fixed point.
  for (double a : {0.5, 2.0, 4.0}) {
    const ModelParams p(a);
    const auto s = summarize(orbit_from_energy(p.h_min() + 1e-6, p));
    CHECK(s.var_y / s.var_x == doctest::Approx(a).epsilon(1e-6));
    CHECK(std::abs(s.var_y / s.var_x - a * a) > 0.1);
  }
}

TEST_CASE("orbit identities across the (alpha, h) grid") {
  for (double a : {0.5, 1.0, 2.0}) {
    const ModelParams p(a);
    for (double off : {0.1, 1.0, 2.0}) {
      CAPTURE(a);
      CAPTURE(off);
      const auto s = summarize(orbit_from_energy(p.h_min() + off, p));
      CHECK(std::abs(s.mean_x - 1.0) < 1e-6);
      CHECK(std::abs(s.mean_y - 1.0) < 1e-6);
      CHECK(s.var_x * a * s.tau == doctest::Approx(s.area_lebesgue).epsilon(1e-6));
      // int (y-1)^2 dt equals the Lebesgue area itself, so the variance ratio
      // is alpha; it coincides with alpha^2 only at alpha = 1.
      CHECK(s.var_y * s.tau == doctest::Approx(s.area_lebesgue).epsilon(1e-6));
      CHECK(s.var_y / s.var_x == doctest::Approx(a).epsilon(1e-6));
      CHECK(std::abs(s.theta_x - s.theta_y) < 1e-8);
      CHECK(std::abs(s.theta_x - s.area_invariant / s.tau) < 1e-6);
      CHECK(std::abs(s.area_invariant - s.area_invariant_alt) < 1e-8);
      CHECK(s.theta() >= 0.0);
      CHECK(s.f_alpha <= -1.0);
      CHECK(s.dA_dalpha == doctest::Approx(s.f_alpha * s.tau).epsilon(1e-12));
    }
  }
}

TEST_CASE("area_invariant_direct") {
  SUBCASE("ellipse limits") {
    CHECK(area_invariant_direct(2.01, ModelParams(1.0), 64) ==
          doctest::Approx(2.0 * std::numbers::pi * 0.01).epsilon(0.02));
    CHECK(area_invariant_direct(5.01, ModelParams(4.0), 64) ==
          doctest::Approx(std::numbers::pi * 0.01).epsilon(0.02));
  }
  SUBCASE("degenerates to zero at the minimum") {
    CHECK(area_invariant_direct(2.0 + 1e-10, ModelParams(1.0), 128) < 1e-8);
  }
  SUBCASE("agrees with the line-integral area") {
    for (const auto& row : kOracle) {
      CAPTURE(row.h);
      const double direct = area_invariant_direct(row.h, ModelParams(row.alpha), 2048);
      CHECK(direct == doctest::Approx(row.area).epsilon(2e-3));
    }
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS((void)area_invariant_direct(2.0, ModelParams(1.0), 128), Error);
    CHECK_THROWS_AS((void)area_invariant_direct(2.5, ModelParams(1.0), 32), Error);
  }
}

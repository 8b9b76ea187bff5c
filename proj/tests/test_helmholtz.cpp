#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lvthermo/helmholtz.hpp"

using namespace lvthermo;

TEST_CASE("dA/dh equals the event-located period") {
  const ModelParams p(1.0);
  const double tau = orbit_from_energy(2.5, p).period_tau;
  CHECK(dA_dh(2.5, p, 1e-4) == doctest::Approx(tau).epsilon(1e-4));
  // Frozen oracle value (tests/oracle/area_oracle.py).
  CHECK(dA_dh(2.61, ModelParams(0.5)) == doctest::Approx(11.476914330712361).epsilon(1e-6));
}

TEST_CASE("dA/dh small-oscillation limits") {
  CHECK(dA_dh(2.0 + 1e-4, ModelParams(1.0)) ==
        doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-3));
  CHECK(dA_dh(5.0 + 1e-4, ModelParams(4.0)) == doctest::Approx(std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("dA/dh rejects stencils below the minimum") {
  CHECK_THROWS_AS((void)dA_dh(2.0, ModelParams(1.0)), Error);
  CHECK_THROWS_AS((void)dA_dh(2.0 + 1e-4, ModelParams(1.0), 1e-3), Error);
}

TEST_CASE("dA/dalpha at fixed h matches the line integral") {
  for (auto [h, a] : {std::pair{2.61, 1.0}, std::pair{2.61, 0.5}, std::pair{3.5, 2.0}}) {
    const ModelParams p(a);
    const auto s = summarize(orbit_from_energy(h, p));
    CHECK(dA_dalpha(h, p) == doctest::Approx(s.dA_dalpha).epsilon(1e-5));
    // F_alpha = (dA/dalpha)_h / (dA/dh)_alpha
    CHECK(dA_dalpha(h, p) / dA_dh(h, p) == doctest::Approx(s.f_alpha).epsilon(1e-3));
  }
}

TEST_CASE("theta and F_alpha") {
  SUBCASE("theta vanishes and F_alpha -> -1 at the minimum") {
    const ModelParams p(1.0);
    CHECK(theta_fn(2.0 + 1e-8, p) < 1e-7);
    CHECK(f_alpha_fn(2.0 + 1e-8, p) == doctest::Approx(-1.0).epsilon(1e-7));
  }
  SUBCASE("theta near the minimum tracks h - h_min") {
    CHECK(std::abs(theta_fn(2.01, ModelParams(1.0)) - 0.01) < 1e-4);
  }
  SUBCASE("theta = A / (dA/dh)") {
    for (double a : {0.5, 1.0, 2.0}) {
      const ModelParams p(a);
      const double h = p.h_min() + 0.7;
      CHECK(theta_from_area(h, p) == doctest::Approx(theta_fn(h, p)).epsilon(1e-4));
    }
  }
  SUBCASE("energy below minimum") {
    CHECK_THROWS_AS((void)theta_fn(1.9, ModelParams(1.0)), Error);
    CHECK_THROWS_AS((void)f_alpha_fn(2.0, ModelParams(1.0)), Error);
  }
}

TEST_CASE("Helmholtz residual") {
  const ModelParams p(1.0);
  SUBCASE("iso-alpha: residual is second order in d_h") {
    const auto r1 = helmholtz_residual(2.61, p, 1e-2, 0.0);
    const auto r2 = helmholtz_residual(2.61, p, 5e-3, 0.0);
    CHECK(std::abs(r1.residual) < 1e-4);
    CHECK(r1.residual / r2.residual == doctest::Approx(4.0).epsilon(0.25));
  }
  SUBCASE("iso-h: theta dlnA matches F_alpha dalpha to second order") {
    const auto r = helmholtz_residual(2.61, p, 0.0, 1e-3);
    CHECK(std::abs(r.residual) < 1e-5);
    CHECK(std::abs(r.dh_predicted) < 1e-5);
  }
  SUBCASE("combined step 1e-3") {
    const auto r = helmholtz_residual(2.61, p, 1e-3, 1e-3);
    CHECK(std::abs(r.residual) <= 1e-5);
    CHECK(r.dh_actual == 1e-3);
    CHECK(r.step_alpha == 1e-3);
  }
  SUBCASE("second-order convergence under halving") {
    const double d = 1e-2;
    const auto r1 = helmholtz_residual(2.61, p, d, d);
    const auto r2 = helmholtz_residual(2.61, p, d / 2, d / 2);
    const auto r3 = helmholtz_residual(2.61, p, d / 4, d / 4);
    CHECK(r1.residual / r2.residual == doctest::Approx(4.0).epsilon(0.25));
    CHECK(r2.residual / r3.residual == doctest::Approx(4.0).epsilon(0.25));
  }
  SUBCASE("steps leaving the closed-orbit region") {
    CHECK_THROWS_AS((void)helmholtz_residual(2.01, p, 0.0, 0.02), Error);
  }
}

TEST_CASE("eos_grid") {
  SUBCASE("single cell at h = 2.61") {
    const auto rows = eos_grid({1.0}, {0.61});
    REQUIRE(rows.size() == 1);
    const auto& r = rows[0];
    CHECK(r.ok());
    CHECK(r.h == doctest::Approx(2.61));
    CHECK(r.tau > 0.0);
    CHECK(r.area_A > 0.0);
    CHECK(r.theta > 0.0);
    CHECK(r.f_alpha_abs >= 1.0);
    CHECK(r.ln_area == doctest::Approx(std::log(r.area_A)));
  }
  SUBCASE("ordering is alpha-major and failures become error rows") {
    const auto rows = eos_grid({0.5, 1.0}, {0.1, -0.2, 1.0}, kDefaultRelTol, 3);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].alpha == 0.5);
    CHECK(rows[2].alpha == 0.5);
    CHECK(rows[3].alpha == 1.0);
    CHECK(rows[0].h < rows[2].h);
    CHECK(rows[1].error == "EnergyBelowMinimum");
    CHECK(rows[4].error == "EnergyBelowMinimum");
    CHECK(rows[5].ok());
  }
  SUBCASE("parallel and serial evaluation agree bit for bit") {
    const auto a = eos_grid({0.6, 1.2}, default_eos_offsets(4), kDefaultRelTol, 1);
    const auto b = eos_grid({0.6, 1.2}, default_eos_offsets(4), kDefaultRelTol, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].theta == b[i].theta);
      CHECK(a[i].area_A == b[i].area_A);
    }
  }
  SUBCASE("offsets -> 0: theta -> 0 and |F| -> 1") {
    const auto rows = eos_grid({0.8}, {1e-1, 1e-2, 1e-3, 1e-4});
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].theta < rows[i - 1].theta);
      CHECK(rows[i].f_alpha_abs < rows[i - 1].f_alpha_abs);
    }
    CHECK(rows.back().theta < 2e-4);
    CHECK(rows.back().f_alpha_abs == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("A decreases in alpha at h = 2.61") {
    double prev = 1e300;
    for (double a : {0.5, 0.6, 0.8, 1.2}) {
      const auto r = eos_record(a, 2.61);
      CHECK(r.area_A < prev);
      prev = r.area_A;
    }
  }
  SUBCASE("default offsets span [1e-2, 2]") {
    const auto off = default_eos_offsets();
    CHECK(off.front() == doctest::Approx(1e-2));
    CHECK(off.back() == doctest::Approx(2.0));
  }
}
